#ifndef LTFSK_ERRORS_HPP
#define LTFSK_ERRORS_HPP

#include <stdexcept>
#include <string>

namespace ltfsk {

enum class errc {
    empty_distribution,
    non_positive_probability,
    not_normalized,
    length_mismatch,
    unsupported_m,
    ber_out_of_range,
    no_convergence,
    non_positive_distance,
    duration_overflow,
    m_out_of_range,
    missing_gain,
    empty_table,
    no_crossover,
    bound_too_small,
    unknown_code,
    missing_cell,
    unknown_key,
    bad_value,
    unreadable_file,
    insufficient_coverage,
    unknown_scheme,
};

class error : public std::runtime_error {
  public:
    error(errc code, const std::string& what) : std::runtime_error(what), code_(code) {}
    errc code() const noexcept { return code_; }

  private:
    errc code_;
};

[[noreturn]] inline void fail(errc code, const std::string& what) { throw error(code, what); }

} // namespace ltfsk

#endif
