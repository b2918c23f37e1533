#pragma once

#include <cstdint>
#include <map>
#include <memory>
#include <optional>
#include <string>
#include <string_view>
#include <utility>
#include <vector>

#include "gsc/perm.hpp"

namespace gsc {

struct GroupSpec {
  enum class Kind { Cyclic, DirectProduct, Dihedral, Symmetric, Alternating, PermGenerated, Named };

  Kind kind = Kind::Cyclic;
  int n = 1;                          // Cyclic, Dihedral, Symmetric, Alternating, GCnX(n)
  std::vector<GroupSpec> factors;     // DirectProduct
  int degree = 0;                     // PermGenerated
  std::vector<Perm> generators;       // PermGenerated
  std::string name;                   // Named: "D4_abc", "GCCX", "GCnX"

  static GroupSpec cyclic(int n);
  static GroupSpec dihedral(int n);
  static GroupSpec symmetric(int n);
  static GroupSpec alternating(int n);
  static GroupSpec direct_product(std::vector<GroupSpec> factors);
  static GroupSpec perm_generated(int degree, std::vector<Perm> generators);
  static GroupSpec named(const std::string& name, int n = 0);

  // Short human label, e.g. "Z3", "D4", "S3", "Z2xZ2", "D4_abc".
  std::string label() const;
};

class GroupTable {
public:
  static constexpr int identity = 0;

  GroupTable(GroupSpec spec, int order, std::vector<int> mult, std::vector<int> inv,
             std::vector<std::string> names);

  int order() const { return order_; }
  int mul(int a, int b) const { return mult_[static_cast<std::size_t>(a) * order_ + b]; }
  int inv(int a) const { return inv_[a]; }
  const std::string& name(int g) const { return names_[g]; }
  const std::vector<std::string>& names() const { return names_; }
  const GroupSpec& spec() const { return spec_; }
  const std::vector<int>& mult_table() const { return mult_; }
  const std::vector<int>& inv_table() const { return inv_; }
  std::string label() const { return spec_.label(); }

  // Named generators / aliases used by the word parser (e.g. r, s or a, b, c).
  void set_aliases(std::vector<std::pair<std::string, int>> aliases) { aliases_ = std::move(aliases); }
  const std::vector<std::pair<std::string, int>>& aliases() const { return aliases_; }

  // Parses full names ("a^1 b^0 c^1", "(1 2 3)") and alias words ("r^2 s", "ab", "c a", "1").
  int parse(std::string_view word) const;
  std::optional<int> try_parse(std::string_view word) const;

  int conj(int g, int h) const { return mul(mul(h, g), inv(h)); }  // h g h^-1
  int pow(int g, long k) const;
  int element_order(int g) const;
  bool is_abelian() const;

private:
  GroupSpec spec_;
  int order_;
  std::vector<int> mult_;
  std::vector<int> inv_;
  std::vector<std::string> names_;
  std::vector<std::pair<std::string, int>> aliases_;
  std::map<std::string, int, std::less<>> name_index_;
};

using GroupPtr = std::shared_ptr<const GroupTable>;

inline constexpr int kDefaultOrderCap = 4096;

GroupPtr build_group(const GroupSpec& spec, int cap = kDefaultOrderCap);
// Builds a table from a list of permutations closed under composition (identity first).
GroupPtr group_from_perms(GroupSpec spec, const std::vector<Perm>& elems,
                          std::vector<std::string> names);

int multiply(const GroupTable& G, int a, int b);
int inverse(const GroupTable& G, int a);
int conjugate(const GroupTable& G, int g, int h);

// Invariant checks. Associativity is exhaustive up to |G| = 64, sampled above.
struct GroupCheck {
  bool identity = true, inverse = true, latin = true, associative = true;
  bool ok() const { return identity && inverse && latin && associative; }
  std::string message;
};
GroupCheck validate_group(const GroupTable& G, std::uint64_t seed = 1);

class Subgroup {
public:
  Subgroup(GroupPtr parent, std::vector<int> members);

  const GroupPtr& parent() const { return parent_; }
  const std::vector<int>& members() const { return members_; }
  int size() const { return static_cast<int>(members_.size()); }
  bool contains(int g) const { return local_[g] >= 0; }
  int embed(int local) const { return members_[local]; }
  int project(int g) const { return local_[g]; }
  bool is_whole() const { return size() == parent_->order(); }
  // Standalone table on local indices (identity is local 0), names inherited.
  const GroupPtr& as_group() const { return local_group_; }
  std::string label;

private:
  GroupPtr parent_;
  std::vector<int> members_;
  std::vector<int> local_;
  GroupPtr local_group_;
};

using SubgroupPtr = std::shared_ptr<const Subgroup>;

SubgroupPtr subgroup_closure(const GroupPtr& G, const std::vector<int>& generators);
SubgroupPtr whole_group(const GroupPtr& G);
bool is_normal(const Subgroup& H);

std::vector<std::vector<int>> conjugacy_classes(const GroupTable& G);
// class_of[g] = index into conjugacy_classes(G)
std::vector<int> class_index(const GroupTable& G, const std::vector<std::vector<int>>& classes);

struct KnitDecomposition {
  GroupPtr G;
  SubgroupPtr H, K;
  std::vector<std::pair<int, int>> factor_hk;  // g -> (h, k), g = h k
  std::vector<std::pair<int, int>> factor_kh;  // g -> (k, h), g = k h
  std::vector<int> transversal;                // left transversal of H (the elements of K)

  // (k, h) -> (h', k') with k h = h' k'
  std::pair<int, int> commute_kh(int k, int h) const { return factor_hk[G->mul(k, h)]; }
  // (h, k) -> (k', h') with h k = k' h'
  std::pair<int, int> commute_hk(int h, int k) const { return factor_kh[G->mul(h, k)]; }
};

KnitDecomposition knit_decompose(const GroupPtr& G, const SubgroupPtr& H, const SubgroupPtr& K);

struct Automorphism {
  GroupPtr G;
  std::vector<int> perm;
  std::optional<int> inner;

  int operator()(int g) const { return perm[g]; }
  Automorphism compose(const Automorphism& other) const;  // this after other
  Automorphism inverse() const;
  bool is_identity() const;
};

// Throws unless the map is a well-defined bijective homomorphism.
void validate_automorphism(const Automorphism& phi);
Automorphism automorphism_from_images(const GroupPtr& G,
                                      const std::vector<std::pair<int, int>>& generator_images);
Automorphism inner_automorphism(const GroupPtr& G, int g);
Automorphism identity_automorphism(const GroupPtr& G);

// A generating set found greedily (used for reports and automorphism search).
std::vector<int> small_generating_set(const GroupTable& G);

}  // namespace gsc
