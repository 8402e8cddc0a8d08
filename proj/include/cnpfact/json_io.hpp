// SPDX-License-Identifier: Apache-2.0
#ifndef CNPFACT_JSON_IO_HPP
#define CNPFACT_JSON_IO_HPP

#include <vector>

#include <json.hpp>

#include "cnpfact/beurling.hpp"
#include "cnpfact/cnp.hpp"
#include "cnpfact/fock.hpp"
#include "cnpfact/mult.hpp"
#include "cnpfact/symfock.hpp"
#include "cnpfact/weakprod.hpp"

namespace cnpfact {

using json = nlohmann::ordered_json;

// Schema violations throw Error(InvalidInput, "schema_violation").

json word_to_json(const Word& w);
Word word_from_json(const json& j, int d);
json multi_index_to_json(const MultiIndex& n);
MultiIndex multi_index_from_json(const json& j, int d);

json to_json(const FreeVector& v);
FreeVector free_vector_from_json(const json& j);
json to_json(const SymVector& h);
SymVector sym_vector_from_json(const json& j);

json to_json(const FactorizationT1& f);
json to_json(const FactorizationT2& f);
json to_json(const ColRowReport& r);

json to_json(const CNPSpace& space);
CNPSpace cnp_space_from_json(const json& j);
json to_json(const SampledFunction& s);
SampledFunction sampled_function_from_json(const json& j);
json to_json(const CNPFactorization& f);

json to_json(const WeakProductRep& rep);
WeakProductRep weak_product_from_json(const json& j);

/// Accepts a bare array of polynomials or {"functions": [...]}.
std::vector<SymVector> sym_list_from_json(const json& j, const char* key = "functions");

}  // namespace cnpfact

#endif  // CNPFACT_JSON_IO_HPP
