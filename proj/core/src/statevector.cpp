#include "arbq/statevector.hpp"

#include <cmath>
#include <stdexcept>

namespace arbq {

Statevector::Statevector(int qubits) : qubits_(qubits) {
    if (qubits < 1 || qubits > 24)
        throw std::invalid_argument("qubit count out of range: " + std::to_string(qubits));
    amps_.assign(std::size_t{1} << qubits, {0.0, 0.0});
    amps_[0] = {1.0, 0.0};
}

double Statevector::norm() const {
    double s = 0.0;
    for (const auto& a : amps_) s += std::norm(a);
    return std::sqrt(s);
}

void Statevector::apply_1q(int qubit, const std::complex<double> m[2][2]) {
    if (qubit < 0 || qubit >= qubits_)
        throw std::invalid_argument("qubit index out of range");
    const std::size_t stride = std::size_t{1} << (qubits_ - 1 - qubit);
    for (std::size_t base = 0; base < amps_.size(); base += 2 * stride) {
        for (std::size_t off = 0; off < stride; ++off) {
            auto& a0 = amps_[base + off];
            auto& a1 = amps_[base + off + stride];
            const auto t0 = m[0][0] * a0 + m[0][1] * a1;
            const auto t1 = m[1][0] * a0 + m[1][1] * a1;
            a0 = t0;
            a1 = t1;
        }
    }
}

void Statevector::hadamard(int qubit) {
    const double s = 1.0 / std::sqrt(2.0);
    const std::complex<double> m[2][2] = {{{s, 0}, {s, 0}}, {{s, 0}, {-s, 0}}};
    apply_1q(qubit, m);
}

void Statevector::ry(int qubit, double theta) {
    const double c = std::cos(theta / 2), s = std::sin(theta / 2);
    const std::complex<double> m[2][2] = {{{c, 0}, {-s, 0}}, {{s, 0}, {c, 0}}};
    apply_1q(qubit, m);
}

void Statevector::rz(int qubit, double theta) {
    const std::complex<double> m[2][2] = {
        {std::polar(1.0, -theta / 2), {0, 0}}, {{0, 0}, std::polar(1.0, theta / 2)}};
    apply_1q(qubit, m);
}

void Statevector::cnot(int control, int target) {
    if (control == target || control < 0 || target < 0 || control >= qubits_ ||
        target >= qubits_)
        throw std::invalid_argument("bad CNOT qubit pair");
    const std::size_t cbit = std::size_t{1} << (qubits_ - 1 - control);
    const std::size_t tbit = std::size_t{1} << (qubits_ - 1 - target);
    for (std::size_t i = 0; i < amps_.size(); ++i)
        if ((i & cbit) && !(i & tbit)) std::swap(amps_[i], amps_[i | tbit]);
}

void Statevector::cz(int a, int b) {
    if (a == b || a < 0 || b < 0 || a >= qubits_ || b >= qubits_)
        throw std::invalid_argument("bad CZ qubit pair");
    const std::size_t abit = std::size_t{1} << (qubits_ - 1 - a);
    const std::size_t bbit = std::size_t{1} << (qubits_ - 1 - b);
    for (std::size_t i = 0; i < amps_.size(); ++i)
        if ((i & abit) && (i & bbit)) amps_[i] = -amps_[i];
}

}  // namespace arbq
