#pragma once

#include <cstdint>
#include <string>
#include <vector>

namespace gsc {

// Images of 0..n-1. Products compose like operators: (p*q)(x) = p(q(x)).
using Perm = std::vector<std::uint32_t>;

Perm perm_identity(std::size_t degree);
Perm perm_compose(const Perm& p, const Perm& q);
Perm perm_inverse(const Perm& p);
bool perm_is_bijection(const Perm& p, std::size_t degree);
bool perm_is_identity(const Perm& p);

// Cycle notation with 1-based points, e.g. "(1 2 3)(4 5)". "()" is the identity.
Perm perm_from_cycles(const std::string& text, std::size_t degree);
std::string perm_to_cycles(const Perm& p);

// Deterministic Schreier-Sims stabilizer chain.
class StabChain {
public:
  StabChain(std::size_t degree, const std::vector<Perm>& generators);

  std::uint64_t order() const;
  bool contains(const Perm& p) const;
  std::size_t degree() const { return degree_; }
  const std::vector<std::uint32_t>& base() const { return base_; }

private:
  struct Level {
    std::uint32_t point;
    std::vector<Perm> gens;
    // transversal[x] maps point -> x, empty if x not in orbit
    std::vector<Perm> transversal;
    std::vector<std::uint32_t> orbit;
  };

  void extend_level(std::size_t i, const Perm& g);
  void rebuild_orbit(std::size_t i);
  // Returns residue after sifting, and the level at which sifting stopped.
  std::pair<Perm, std::size_t> sift(const Perm& g) const;
  void add_generator(std::size_t i, const Perm& g);

  std::size_t degree_;
  std::vector<std::uint32_t> base_;
  std::vector<Level> levels_;
};

std::uint64_t perm_group_order(std::size_t degree, const std::vector<Perm>& generators);

// Breadth-first enumeration of the generated group. The identity comes first;
// throws OrderCapExceeded beyond cap elements.
std::vector<Perm> perm_closure(std::size_t degree, const std::vector<Perm>& generators,
                               std::size_t cap);

// Gates on n qubits as permutations of the 2^n basis indices; qubit 1 is the most significant bit.
Perm x_gate(int n, int q);
Perm mcx_gate(int n, const std::vector<int>& controls, int target);
Perm swap_gate(int n, int a, int b);

}  // namespace gsc
