#pragma once

#include <string>

#include "ellipt/charclass.hpp"

namespace ellipt {

// Model files are JSON documents:
//
//   {
//     "meta": {"dimension": 9, "flags": ["H3(M,R)=0"]},
//     "generators": ["a", "b"],
//     "bundles": {
//       "tm": [[-1, 0], [0, -1], ...],              // or {"positive": [...], "negative": [...]}
//       "tm_split": [[-1, 0], ...],                 // odd models, optional
//       "w": [[1, 0], [0, 1], [-1, -1]],
//       "v": [["1", "0"], ["i", "0"], ...],         // optional
//       "e": {"rank": 8,                            // optional, odd models
//             "components": {"4": [<term>, ...]},
//             "delta": [<term>, ...]}                // optional override
//     },
//     "functional": [<term>, ...]
//   }
//
// A root is a coefficient vector over the generators. Every coefficient is
// an integer or a Gaussian-rational string "a", "a/b", "bi", "a+bi",
// "-1/2-3/4i". A <term> is {"monomial": [exponents], "value": <coefficient>,
// "pi": k} and stands for value * pi^k times the monomial. Classes in "e"
// carry an implied sigma. The basis top degree is dimension / 2.

// ParseError on malformed JSON or fields, InvalidModel when the parsed model
// fails validation.
ManifoldModel parse_model_json(const std::string& text);
ManifoldModel load_model(const std::string& path);

// Canonical serialization: parse_model_json(serialize_model(m)) reproduces m.
// InvalidModel when a coefficient is not a Gaussian rational times a power of
// pi.
std::string serialize_model(const ManifoldModel& m);

GaussRat parse_gauss(const std::string& s);
std::string format_gauss(const GaussRat& g);

// Field-wise equality of two models (bases, bundles, E-data, functional,
// flags).
bool same_model(const ManifoldModel& a, const ManifoldModel& b);

}  // namespace ellipt
