#pragma once

#include <string>
#include <vector>

#include "thom/error.hpp"
#include "thom/partition.hpp"
#include "thom/symfunc.hpp"

namespace thom {

// H*(Gr(n, N)) on the Schubert basis: partitions in the n × (N−n) box.
class GrassmannianRing {
public:
    GrassmannianRing(int n, int N) : n_(n), N_(N) {
        if (n < 0 || N < n) throw Error(errc::invalid_argument, "Gr(n, N) needs 0 <= n <= N");
        basis_ = partitions_in_box(rows(), cols());
    }

    int n() const noexcept { return n_; }
    int N() const noexcept { return N_; }
    int rows() const noexcept { return n_; }
    int cols() const noexcept { return N_ - n_; }
    int top_degree() const noexcept { return rows() * cols(); }
    const std::vector<Partition>& basis() const noexcept { return basis_; }

    Partition top_class() const { return Partition::from_padded(std::vector<int>(static_cast<std::size_t>(rows()), cols())); }

    bool contains(const Partition& lambda) const { return fits_in_box(lambda, rows(), cols()); }

    void require(const Partition& lambda) const {
        if (!contains(lambda))
            throw Error(errc::out_of_box, lambda.str() + " is not a Schubert index of Gr(" + std::to_string(n_) +
                                              "," + std::to_string(N_) + ")");
    }

private:
    int n_;
    int N_;
    std::vector<Partition> basis_;
};

// σ_λ · σ_μ: the Littlewood–Richardson product with out-of-box partitions deleted.
inline SchurExpansion cup_product(const GrassmannianRing& ring, const Partition& lambda, const Partition& mu) {
    ring.require(lambda);
    ring.require(mu);
    const SchurExpansion full = lr_product(lambda, mu);
    SchurExpansion out;
    for (const auto& [nu, c] : full.coeffs())
        if (ring.contains(nu)) out.add(nu, c);
    return out;
}

// ⟨σ_λ, σ_μ⟩: coefficient of the top class in σ_λ·σ_μ; zero unless the degrees are complementary.
inline long intersection_number(const GrassmannianRing& ring, const Partition& lambda, const Partition& mu) {
    ring.require(lambda);
    ring.require(mu);
    if (lambda.weight() + mu.weight() != ring.top_degree()) return 0;
    return cup_product(ring, lambda, mu).coefficient(ring.top_class()).get_num().get_si();
}

}  // namespace thom
