// Offline search for two 3-dimensional representations of 3.Alt6 over GF(q)
// and a pair of generators satisfying the Alt6 relators up to scalars.
//
//   alt6_reps [--q 19] [--seed 1] [--out data/alt6_f4_19.txt]
//
// The group is built from A4 = <cyclic shift, diag(1,-1,-1)>, an icosahedral
// rotation with entries in {0, +-1/2, +-phi/2, +-phi^-1/2} and a monomial
// matrix with cube roots of unity; the searches below pick the last two.
#include <algorithm>
#include <fstream>
#include <iostream>
#include <random>
#include <sstream>

#include "CLI11.hpp"
#include "lie/embed.hpp"
#include "lie/errors.hpp"
#include "lie/rootdata.hpp"
#include "lie/words.hpp"

using namespace lie;

namespace {

struct Ico {
  std::array<std::array<int, 3>, 3> which;  // 0: 1, 1: phi, 2: 1/phi
  std::array<std::array<int, 3>, 3> sign;
  Mat build(const FieldPtr& F, Elt phi) const {
    Elt half = F->inv(2);
    Elt val[3] = {1, phi, F->inv(phi)};
    Mat m(F, 3, 3);
    for (int i = 0; i < 3; ++i)
      for (int j = 0; j < 3; ++j) {
        Elt v = F->mul(half, val[which[i][j]]);
        m(i, j) = sign[i][j] < 0 ? F->neg(v) : v;
      }
    return m;
  }
};

struct Mono {
  std::array<int, 3> perm, omega_exp, sign;
  Mat build(const FieldPtr& F, Elt omega) const {
    Mat m(F, 3, 3);
    for (int i = 0; i < 3; ++i) {
      Elt v = F->pow(omega, omega_exp[i]);
      m(i, perm[i]) = sign[i] < 0 ? F->neg(v) : v;
    }
    return m;
  }
};

size_t group_order(const std::vector<Mat>& gens, size_t limit) {
  try {
    return enumerate_group(gens, limit).size();
  } catch (const SearchFailed&) {
    return limit + 1;
  }
}

Mat block(const Mat& m, int off) {
  Mat b(m.field(), 3, 3);
  for (int i = 0; i < 3; ++i)
    for (int j = 0; j < 3; ++j) b(i, j) = m(off + i, off + j);
  return b;
}

bool ldu_ok(const Mat& m) {
  try {
    ldu(m);
    return true;
  } catch (const NoLDU&) {
    return false;
  }
}

Elt find_root(const FieldPtr& F, const std::function<bool(Elt)>& pred) {
  for (Elt x = 1; x < F->q(); ++x)
    if (pred(x)) return x;
  throw SearchFailed("no root in field");
}

}  // namespace

int main(int argc, char** argv) {
  CLI::App app{"search for 3.Alt6 representation data"};
  std::uint32_t q = 19;
  std::uint64_t seed = 1;
  std::string out = default_rep_data_path();
  app.add_option("--q", q, "prime field size");
  app.add_option("--seed", seed);
  app.add_option("--out", out);
  CLI11_PARSE(app, argc, argv);

  try {
    auto F = Field::prime(q);
    std::mt19937_64 rng(seed);
    Elt s5 = find_root(F, [&](Elt x) { return F->mul(x, x) == 5 % q; });
    Elt omega = find_root(F, [&](Elt x) { return x != 1 && F->pow(x, 3) == 1; });
    Elt phi = F->mul(F->add(1, s5), F->inv(2));
    Elt phi2 = F->mul(F->sub(1, s5), F->inv(2));  // the other root of X^2 - X - 1

    Mat P = Mat::from_ints(F, {{0, 1, 0}, {0, 0, 1}, {1, 0, 0}});
    Mat D = Mat::from_ints(F, {{1, 0, 0}, {0, -1, 0}, {0, 0, -1}});

    // icosahedral rotation: rows are signed permutations of (1, phi, 1/phi)/2
    std::vector<Ico> icos;
    std::array<int, 3> idx{0, 1, 2};
    std::vector<std::array<int, 3>> perms;
    do perms.push_back(idx);
    while (std::next_permutation(idx.begin(), idx.end()));
    for (auto& p0 : perms)
      for (auto& p1 : perms)
        for (auto& p2 : perms)
          for (int sg = 0; sg < 512; ++sg) {
            Ico c;
            c.which = {p0, p1, p2};
            for (int k = 0; k < 9; ++k) c.sign[k / 3][k % 3] = (sg >> k) & 1 ? -1 : 1;
            icos.push_back(c);
          }
    std::shuffle(icos.begin(), icos.end(), rng);
    std::optional<Ico> ico;
    for (auto& c : icos) {
      Mat M = c.build(F, phi);
      if (!(M * M.transpose()).is_identity() || det(M) != 1) continue;
      if (group_order({P, D, M}, 60) == 60) {
        ico = c;
        break;
      }
    }
    if (!ico) throw SearchFailed("no icosahedral rotation");
    Mat M = ico->build(F, phi);
    std::cerr << "icosahedral rotation found\n";

    std::vector<Mono> monos;
    for (auto& p : perms)
      for (int e = 0; e < 27; ++e)
        for (int sg = 0; sg < 8; ++sg)
          monos.push_back({p, {e % 3, e / 3 % 3, e / 9}, {sg & 1 ? -1 : 1, sg & 2 ? -1 : 1, sg & 4 ? -1 : 1}});
    std::shuffle(monos.begin(), monos.end(), rng);
    std::optional<Mono> mono;
    for (auto& c : monos) {
      Mat T = c.build(F, omega);
      if (det(T) != 1) continue;
      if (group_order({P, D, M, T}, 1080) == 1080) {
        mono = c;
        break;
      }
    }
    if (!mono) throw SearchFailed("no monomial completing 3.Alt6");
    std::cerr << "group of order 1080 found\n";

    auto dual = [](const Mat& m) { return inverse(m).transpose(); };
    std::vector<Mat> gens1 = {P, D, M, mono->build(F, omega)};
    std::vector<Mat> conj = {P, D, ico->build(F, phi2), mono->build(F, omega)};
    struct Option {
      std::string name;
      std::vector<Mat> gens;
    };
    std::vector<Option> options;
    {
      std::vector<Mat> dc, dd;
      for (auto& g : conj) dc.push_back(dual(g));
      for (auto& g : gens1) dd.push_back(dual(g));
      options = {{"dual of the phi-conjugate", dc}, {"phi-conjugate", conj}, {"dual", dd}};
    }

    AdjointGroup G(build_lie_algebra(roots_from_dynkin("F4"), F));
    for (auto& opt : options) {
      std::vector<Mat> pg;
      for (int k = 0; k < 4; ++k) pg.push_back(block_diag({gens1[k], opt.gens[k]}));
      auto elems = enumerate_group(pg, 1080 * 3);
      if (elems.size() != 1080) {
        std::cerr << opt.name << ": pair group has order " << elems.size() << "\n";
        continue;
      }
      std::vector<Mat> invol, four;
      for (auto& g : elems) {
        auto o = order_dividing(g, 60);
        if (o == 2) invol.push_back(g);
        if (o == 4) four.push_back(g);
      }
      std::shuffle(invol.begin(), invol.end(), rng);
      std::shuffle(four.begin(), four.end(), rng);
      auto scalar_blocks = [](const Mat& m) { return block(m, 0).is_scalar() && block(m, 3).is_scalar(); };
      std::optional<std::pair<Mat, Mat>> ab;
      for (auto& a : invol) {
        for (auto& b : four) {
          Mat abm = a * b;
          if (!scalar_blocks(power(abm, 5)) || !scalar_blocks(power(a * b * b, 5))) continue;
          if (!ldu_ok(block(a, 0)) || !ldu_ok(block(a, 3)) || !ldu_ok(block(b, 0)) || !ldu_ok(block(b, 3))) continue;
          if (group_order({a, b}, 1080) != 1080) continue;
          ab = {a, b};
          break;
        }
        if (ab) break;
      }
      if (!ab) {
        std::cerr << opt.name << ": no generating pair\n";
        continue;
      }
      auto [a, b] = *ab;

      // shortest word in a, b giving a nontrivial scalar
      std::string central;
      {
        std::vector<std::pair<Mat, std::string>> layer{{Mat::identity(F, 6), ""}};
        std::set<std::vector<Elt>> seen{layer[0].first.data()};
        while (central.empty() && !layer.empty()) {
          std::vector<std::pair<Mat, std::string>> next;
          for (auto& [m, w] : layer)
            for (auto [g, c] : {std::pair{&a, 'a'}, std::pair{&b, 'b'}}) {
              Mat x = m * *g;
              if (!seen.insert(x.data()).second) continue;
              if (scalar_blocks(x) && !x.is_identity()) central = w + c;
              next.push_back({x, w + c});
            }
          layer = std::move(next);
        }
      }

      RepData d{block(a, 0), block(b, 0), block(a, 3), block(b, 3), alt6_relators(), central};
      auto res = build_alt6_f4(d);
      for (auto& [k, v] : res.checks) std::cerr << "  " << opt.name << " " << k << " " << v << "\n";
      if (!res.ok()) continue;

      std::ostringstream comment;
      comment << "3.Alt6 < SL3(" << q << ") twice; second representation: " << opt.name << "\n"
              << "generators a (order 2), b (order 4); relators hold up to scalars in SL3\n"
              << "alt6_reps --q " << q << " --seed " << seed;
      std::ofstream os(out);
      write_rep_data(os, d, comment.str());
      std::cerr << "wrote " << out << "\n";
      return 0;
    }
    std::cerr << "no option gives a centreless image\n";
    return 1;
  } catch (const std::exception& e) {
    std::cerr << "error: " << e.what() << "\n";
    return 2;
  }
}
