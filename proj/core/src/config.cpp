#include "sympath/config.hpp"

#include <cstdlib>
#include <stdexcept>
#include <string>

namespace sympath {

namespace {

void read_env(const char* name, double& out) {
    if (const char* v = std::getenv(name)) out = std::stod(v);
}

void read_env(const char* name, int& out) {
    if (const char* v = std::getenv(name)) out = std::stoi(v);
}

void read_env(const char* name, std::int64_t& out) {
    if (const char* v = std::getenv(name)) out = std::stoll(v);
}

} // namespace

Config Config::from_env() {
    Config c;
    read_env("SYMPATH_TOL_SYM", c.tol_sym);
    read_env("SYMPATH_TOL_UNIT", c.tol_unit);
    read_env("SYMPATH_TOL_RAT", c.tol_rat);
    read_env("SYMPATH_TOL_RANK", c.tol_rank);
    read_env("SYMPATH_Q_MAX", c.q_max);
    read_env("SYMPATH_EPSILON", c.epsilon);
    read_env("SYMPATH_N_MAX", c.n_max);
    read_env("SYMPATH_WANT", c.want);
    read_env("SYMPATH_DELTA", c.delta);
    read_env("SYMPATH_M_BAR_OVERRIDE", c.m_bar_override);
    return c;
}

} // namespace sympath
