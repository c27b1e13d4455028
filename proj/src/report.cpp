#include "lie2/report.hpp"

#include <algorithm>
#include <cstdio>
#include <sstream>

namespace lie2 {

bool Report::all_zero() const {
  return std::all_of(items.begin(), items.end(), [](const auto& r) { return r.is_zero(); });
}

bool Report::all_pass(double tol) const {
  return std::all_of(items.begin(), items.end(), [tol](const auto& r) { return r.passes(tol); });
}

double Report::max_value() const {
  double m = 0.0;
  for (const auto& r : items) m = std::max(m, r.value);
  return m;
}

const IdentityResidual* Report::find(const std::string& name) const {
  for (const auto& r : items)
    if (r.name == name) return &r;
  return nullptr;
}

std::vector<std::string> Report::failing(double tol) const {
  std::vector<std::string> out;
  for (const auto& r : items)
    if (!r.passes(tol)) out.push_back(r.name);
  return out;
}

void Report::append(const Report& other) { items.insert(items.end(), other.items.begin(), other.items.end()); }

template <>
IdentityResidual ResidualAccumulator<Rat>::finish() const {
  return IdentityResidual{name_, Mode::exact, max_.get_d(), format_rat(max_), witness_, {}};
}

template <>
IdentityResidual ResidualAccumulator<double>::finish() const {
  return IdentityResidual{name_, Mode::floating, max_, "", witness_, {}};
}

std::string format_residual(const IdentityResidual& r) {
  if (r.mode == Mode::exact) return r.exact_value;
  char buf[32];
  std::snprintf(buf, sizeof buf, "%.3e", r.value);
  return buf;
}

namespace {

template <class T, class F>
std::string matrix_text(const Matrix<T>& m, F&& fmt) {
  std::string out = "[";
  for (std::size_t r = 0; r < m.rows(); ++r) {
    out += r ? ",[" : "[";
    for (std::size_t c = 0; c < m.cols(); ++c) out += (c ? "," : "") + fmt(m(r, c));
    out += "]";
  }
  return out + "]";
}

}  // namespace

std::string format_matrix(const Matrix<Rat>& m) { return matrix_text(m, [](const Rat& v) { return format_rat(v); }); }

std::string format_matrix(const Matrix<double>& m) {
  return matrix_text(m, [](double v) {
    char buf[32];
    std::snprintf(buf, sizeof buf, "%.6g", v);
    return std::string(buf);
  });
}

std::string emit_report(const std::string& title, const Report& report) {
  std::ostringstream out;
  out << "REPORT " << title << " ITEMS " << report.items.size() << '\n';
  for (const auto& r : report.items) {
    out << "IDENTITY " << r.name << " RESIDUAL " << format_residual(r) << " MODE "
        << (r.mode == Mode::exact ? "exact" : "float");
    if (r.mode == Mode::floating && r.tol) {
      char buf[32];
      std::snprintf(buf, sizeof buf, "%.1e", *r.tol);
      out << " TOL " << buf;
    }
    if (!r.is_zero() && !r.witness.empty()) out << " WITNESS " << r.witness;
    out << '\n';
  }
  return out.str();
}

}  // namespace lie2
