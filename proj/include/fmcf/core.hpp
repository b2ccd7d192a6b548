#pragma once

#include <cstddef>
#include <functional>
#include <stdexcept>
#include <string>
#include <vector>

namespace fmcf {

enum class ErrorKind {
    InvalidOrder,
    GridTooCoarse,
    NonFinite,
    StarShapeViolated,
    QuadratureBudgetExceeded,
    StabilityCapExceeded,
    NotNormalized,
    ModeUnderResolved,
    InsufficientRecords,
    NonPositiveValues,
    DegenerateWindow,
    ConfigInvalid,
    RuntimeFailure,
};

const char* to_string(ErrorKind k);

class Error : public std::runtime_error {
public:
    Error(ErrorKind kind, const std::string& what);
    ErrorKind kind() const { return kind_; }

private:
    ErrorKind kind_;
};

// Serial is the reference path; Parallel runs the per-node loop under OpenMP.
// Both produce bitwise identical results.
enum class Exec { Serial, Parallel };

enum class Domain { Circle, PeriodicLine };

class FractionalOrder {
public:
    explicit FractionalOrder(double s);
    double value() const { return s_; }
    operator double() const { return s_; }

private:
    double s_;
};

struct HeightField {
    Domain domain = Domain::Circle;
    std::vector<double> values;

    HeightField() = default;
    HeightField(Domain d, std::vector<double> v);

    static HeightField sample(Domain d, std::size_t N, const std::function<double(double)>& f);
    static HeightField constant(Domain d, std::size_t N, double c);

    std::size_t size() const { return values.size(); }
    double spacing() const;
    double cell_length() const;
    double node(std::size_t i) const { return spacing() * static_cast<double>(i); }
    double operator[](std::size_t i) const { return values[i]; }
    double& operator[](std::size_t i) { return values[i]; }

    void validate() const;
};

constexpr double kPi = 3.14159265358979323846;
constexpr double kTwoPi = 2.0 * kPi;

}  // namespace fmcf
