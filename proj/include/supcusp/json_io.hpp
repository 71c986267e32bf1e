#ifndef SUPCUSP_JSON_IO_HPP
#define SUPCUSP_JSON_IO_HPP

// JSON and CSV serialization of the library's value types plus the
// file helpers used by the command line tool. Complex numbers are
// stored as [re, im] pairs and matrices as nested row-major arrays.

#include <string>

#include "json.hpp"
#include "supcusp/dynamics.hpp"
#include "supcusp/series.hpp"

namespace supcusp {

using json = nlohmann::json;

json complex_to_json(cplx c);
cplx complex_from_json(const json& j);
json matrix_to_json(const Mat& m);
Mat matrix_from_json(const json& j);
json cvector_to_json(const Vec& v);
Vec cvector_from_json(const json& j);

// Group elements are validated on input (membership residuals), so a
// perturbed file is rejected with a descriptive error.
json element_to_json(const GroupElement& g);
GroupElement element_from_json(const json& j);

// Multivectors round-trip as {"r": r, "terms": [{"I": [1,2], "c": [re, im]}]}.
json multivector_to_json(const Multivector& v);
Multivector multivector_from_json(const json& j);

json lox_to_json(const LoxodromicData& lox);
LoxodromicData lox_from_json(const json& j);

// Closing results are output-only; a non-finite orbit error is encoded
// as the string "inf".
json closing_to_json(const ClosingResult& res);

json spectrum_to_json(const FourierSpectrum& spec);

// CSV with header "I,m,re,im"; the monomial renders as "[1,2]" and the
// numbers in full-precision scientific notation.
std::string spectrum_to_csv(const FourierSpectrum& spec);

// CSV with header "I,re,im" over the multivector's terms.
std::string multivector_to_csv(const Multivector& v);

// Kernel description: a closed flow line as either "gamma" (a group
// element, classified on the spot) or "lox" (explicit data), monomial
// "I" as an index list, weight "k", and the frequency as either "m"
// directly or an integer lattice index "j" with m = (j - nu_I)/t0.
PoincareKernel kernel_from_json(const json& j);

// Full-precision scientific notation (17 significant digits).
std::string format_full(double x);

// Parses a file, annotating parse errors with the path and position.
json load_json_file(const std::string& path);
void write_text_file(const std::string& path, const std::string& content);

}  // namespace supcusp

#endif
