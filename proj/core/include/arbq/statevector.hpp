#pragma once

#include <complex>
#include <vector>

namespace arbq {

// Dense complex amplitude vector for q qubits. Qubit 0 is the most significant
// bit of the basis index; qubit q-1 (the ancilla in ACE) is the least
// significant.
class Statevector {
public:
    explicit Statevector(int qubits);

    int qubits() const { return qubits_; }
    std::size_t dim() const { return amps_.size(); }
    const std::vector<std::complex<double>>& amplitudes() const { return amps_; }
    std::complex<double>& operator[](std::size_t i) { return amps_[i]; }
    const std::complex<double>& operator[](std::size_t i) const { return amps_[i]; }

    double norm() const;

    void hadamard(int qubit);
    void ry(int qubit, double theta);
    void rz(int qubit, double theta);
    void cnot(int control, int target);
    void cz(int a, int b);

private:
    void apply_1q(int qubit, const std::complex<double> m[2][2]);

    int qubits_;
    std::vector<std::complex<double>> amps_;  // starts in |0...0>
};

}  // namespace arbq
