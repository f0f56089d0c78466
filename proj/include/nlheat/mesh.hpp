#pragma once

#include <cstddef>
#include <span>
#include <vector>

namespace nlheat {

/// Uniform spatial mesh x_i = a + i·h, i = 0..N−1, h = (b−a)/(N−1).
///
/// Storage is 0-based: node i here is node i+1 in the usual 1-based
/// numbering x₁ = a, …, x_N = b.
class SpaceMesh {
public:
    double a() const noexcept { return a_; }
    double b() const noexcept { return b_; }
    double h() const noexcept { return h_; }
    std::size_t size() const noexcept { return nodes_.size(); }
    double x(std::size_t i) const { return nodes_[i]; }
    std::span<const double> nodes() const noexcept { return nodes_; }

    friend bool operator==(const SpaceMesh&, const SpaceMesh&) = default;

private:
    friend SpaceMesh build_space_mesh(double a, double b, std::size_t n);
    SpaceMesh() = default;

    double a_ = 0.0;
    double b_ = 0.0;
    double h_ = 0.0;
    std::vector<double> nodes_;
};

/// Uniform time levels t_n = n·τ, n = 0..M−1.
class TimeMesh {
public:
    double tau() const noexcept { return tau_; }
    std::size_t levels() const noexcept { return levels_; }
    std::size_t steps() const noexcept { return levels_ - 1; }
    double t(std::size_t n) const noexcept { return static_cast<double>(n) * tau_; }
    double t_end() const noexcept { return t(levels_ - 1); }

    friend bool operator==(const TimeMesh&, const TimeMesh&) = default;

private:
    friend TimeMesh build_time_mesh(double tau, double t_end);
    TimeMesh() = default;

    double tau_ = 0.0;
    std::size_t levels_ = 0;
};

/// Throws ErrorKind::Mesh for n < 3 and ErrorKind::Domain for b ≤ a.
SpaceMesh build_space_mesh(double a, double b, std::size_t n);

/// M = round(t_end/τ) + 1. Throws ErrorKind::TimeMesh unless τ > 0, t_end ≥ τ
/// and t_end/τ is within 1e-9 of an integer.
TimeMesh build_time_mesh(double tau, double t_end);

}  // namespace nlheat
