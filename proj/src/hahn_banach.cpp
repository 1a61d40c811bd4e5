#include "sepkit/hahn_banach.hpp"

#include <algorithm>
#include <map>
#include <mutex>

#include "sepkit/reductions.hpp"
#include "sepkit/seqcode.hpp"

namespace sepkit {

FinSeq BasisStream::eprime_combo(const FinSeq& s) const {
  std::vector<Rational> coeffs;
  for (std::size_t k = 0; k < s.size(); ++k) {
    std::uint64_t g = to_u64(q.at(k));
    if (coeffs.size() <= g) coeffs.resize(g + 1, Rational(0));
    coeffs[g] += rat_enum::value(s[k]);
  }
  return coeffs_to_combo(std::move(coeffs));
}

// ---- the independence test --------------------------------------------------

namespace {

struct IntBox {
  std::vector<std::pair<BigInt, BigInt>> range;  // closed

  bool singleton() const {
    for (const auto& [lo, hi] : range)
      if (lo != hi) return false;
    return true;
  }
  std::size_t widest() const {
    std::size_t best = 0;
    BigInt w = range[0].second - range[0].first;
    for (std::size_t i = 1; i < range.size(); ++i)
      if (range[i].second - range[i].first > w) {
        w = range[i].second - range[i].first;
        best = i;
      }
    return best;
  }
};

RatInterval linear_form_interval(const std::vector<Rational>& coef,
                                 const IntBox& box, const Rational& scale) {
  Rational lo(0), hi(0);
  for (std::size_t i = 0; i < coef.size(); ++i) {
    if (coef[i].is_zero()) continue;
    Rational a = coef[i] * Rational(box.range[i].first);
    Rational b = coef[i] * Rational(box.range[i].second);
    lo += rat_min(a, b);
    hi += rat_max(a, b);
  }
  return {lo * scale, hi * scale};
}

std::pair<BigInt, BigInt> square_sum_range(const IntBox& box) {
  BigInt lo = 0, hi = 0;
  for (const auto& [a, b] : box.range) {
    BigInt m = a > 0 ? a : (b < 0 ? -b : BigInt(0));
    BigInt M = std::max(b < 0 ? -b : b, a < 0 ? -a : a);
    lo += m * m;
    hi += M * M;
  }
  return {lo, hi};
}

// generator-coordinate matrix of the w's (column i = coefficients of w_i)
std::vector<std::vector<Rational>> coeff_matrix(const std::vector<FinSeq>& ws) {
  std::vector<std::vector<Rational>> cols;
  std::size_t gens = 0;
  for (const auto& w : ws) {
    cols.push_back(combo_coeffs(w));
    gens = std::max(gens, cols.back().size());
  }
  for (auto& c : cols) c.resize(gens, Rational(0));
  return cols;
}

FinSeq linear_combination(const std::vector<FinSeq>& ws,
                          const std::vector<Rational>& cs) {
  FinSeq acc;
  for (std::size_t i = 0; i < ws.size(); ++i)
    acc = combo_add(acc, combo_scale(cs[i], ws[i]));
  return acc;
}

Rational upper_norm(const BanachSpace& X, const FinSeq& s) {
  if (auto r = X.combo_norm_exact(s)) return *r;
  return X.combo_norm(s).approx(16) + Rational(1, pow2(16));
}

// exact rational Gaussian elimination: any solution of A gamma = b
std::optional<std::vector<Rational>> solve_linear(
    std::vector<std::vector<Rational>> rows, std::vector<Rational> rhs) {
  std::size_t n = rows.size(), m = n ? rows[0].size() : 0;
  std::vector<std::size_t> pivot_col;
  std::size_t r = 0;
  for (std::size_t c = 0; c < m && r < n; ++c) {
    std::size_t p = r;
    while (p < n && rows[p][c].is_zero()) ++p;
    if (p == n) continue;
    std::swap(rows[p], rows[r]);
    std::swap(rhs[p], rhs[r]);
    for (std::size_t i = 0; i < n; ++i) {
      if (i == r || rows[i][c].is_zero()) continue;
      Rational f = rows[i][c] / rows[r][c];
      for (std::size_t j = c; j < m; ++j) rows[i][j] -= f * rows[r][j];
      rhs[i] -= f * rhs[r];
    }
    pivot_col.push_back(c);
    ++r;
  }
  for (std::size_t i = r; i < n; ++i)
    if (!rhs[i].is_zero()) return std::nullopt;
  std::vector<Rational> gamma(m, Rational(0));
  for (std::size_t i = 0; i < r; ++i) gamma[pivot_col[i]] = rhs[i] / rows[i][pivot_col[i]];
  return gamma;
}

bool certify_close(const BanachSpace& X, const FinSeq& diff, const Rational& bound) {
  if (auto r = X.combo_norm_exact(diff)) return *r < bound;
  return creal_cmp(X.combo_norm(diff), CReal(bound), 40) == Cmp::lt;
}

}  // namespace

bool shell_minimum_exceeds(const BanachSpace& X, const std::vector<FinSeq>& ws,
                           std::uint64_t m, std::uint64_t node_budget,
                           bool* budget_hit) {
  if (budget_hit) *budget_hit = false;
  std::size_t ell = ws.size();
  auto cols = coeff_matrix(ws);
  std::size_t gens = cols.empty() ? 0 : cols[0].size();
  Rational rhs(0);
  for (const auto& w : ws) rhs += upper_norm(X, w);
  BigInt shell_lo = pow2(2 * m), shell_hi = pow2(2 * m + 2);

  IntBox root;
  root.range.assign(ell, {-(pow2(m + 1)), pow2(m + 1)});
  std::vector<IntBox> stack{root};
  std::uint64_t nodes = 0;
  const auto& pn = X.pseudo_norm();
  while (!stack.empty()) {
    if (++nodes > node_budget) {
      if (budget_hit) *budget_hit = true;
      return false;
    }
    IntBox box = std::move(stack.back());
    stack.pop_back();
    auto [sq_lo, sq_hi] = square_sum_range(box);
    if (sq_hi < shell_lo || sq_lo > shell_hi) continue;
    // interval bound on ||sum c_i w_i|| over the box
    bool pruned = false;
    if (pn.eval_interval) {
      std::vector<RatInterval> gen_iv(gens);
      for (std::size_t g = 0; g < gens; ++g) {
        std::vector<Rational> row(ell);
        for (std::size_t i = 0; i < ell; ++i) row[i] = cols[i][g];
        IntBox sub = box;
        RatInterval iv = linear_form_interval(row, sub, Rational(1));
        gen_iv[g] = iv;
      }
      if (pn.eval_interval(gen_iv).lo > rhs) pruned = true;
    } else {
      std::vector<Rational> center(ell);
      Rational halfwidth_cost(0);
      for (std::size_t i = 0; i < ell; ++i) {
        center[i] = Rational(box.range[i].first + box.range[i].second, 2);
        halfwidth_cost += Rational(box.range[i].second - box.range[i].first, 2) *
                          upper_norm(X, ws[i]);
      }
      Rational center_norm = upper_norm(X, linear_combination(ws, center)) -
                             Rational(1, pow2(12));
      if (center_norm - halfwidth_cost > rhs) pruned = true;
    }
    if (pruned) continue;
    if (box.singleton()) {
      if (sq_lo < shell_lo || sq_lo > shell_hi) continue;
      std::vector<Rational> c(ell);
      for (std::size_t i = 0; i < ell; ++i) c[i] = Rational(box.range[i].first);
      FinSeq combo = linear_combination(ws, c);
      if (auto ex = X.combo_norm_exact(combo)) {
        if (*ex <= rhs) return false;  // a shell point meets the bound
      } else {
        if (creal_cmp(X.combo_norm(combo), CReal(rhs), 40) != Cmp::gt) return false;
      }
      continue;
    }
    std::size_t d = box.widest();
    BigInt sum = box.range[d].first + box.range[d].second;
    BigInt mid = sum / 2;
    if (sum < 0 && mid * 2 != sum) --mid;  // floor, so halves always shrink
    IntBox left = box, right = box;
    left.range[d].second = mid;
    right.range[d].first = mid + 1;
    stack.push_back(std::move(left));
    stack.push_back(std::move(right));
  }
  return true;
}

PrOutcome pr_test(const BanachSpace& X, const std::vector<FinSeq>& vectors,
                  const FinSeq& candidate, std::uint64_t slack_exponent,
                  std::uint64_t fuel) {
  std::size_t k = vectors.size();
  std::vector<FinSeq> ws = vectors;
  ws.push_back(candidate);
  Rational target(1, pow2(slack_exponent + 1));
  const auto& pn = X.pseudo_norm();

  // branch (b) proposals, cheapest first; the zero tuple seeds the grid
  // descent even when no coordinate hooks exist
  std::vector<std::vector<Rational>> proposals;
  proposals.emplace_back(k, Rational(0));
  if (k > 0 && pn.effective_coords) {
    std::size_t dim = pn.effective_coords(combo_coeffs(candidate)).size();
    auto eff = [&](const FinSeq& s) {
      auto v = pn.effective_coords(combo_coeffs(s));
      v.resize(std::max(dim, v.size()), Rational(0));
      return v;
    };
    std::vector<Rational> b = eff(candidate);
    dim = b.size();
    std::vector<std::vector<Rational>> vs;
    for (const auto& v : vectors) {
      auto col = eff(v);
      col.resize(dim, Rational(0));
      vs.push_back(col);
    }
    std::vector<std::vector<Rational>> rows(dim, std::vector<Rational>(k));
    for (std::size_t r = 0; r < dim; ++r)
      for (std::size_t c = 0; c < k; ++c) rows[r][c] = vs[c][r];
    if (auto exact = solve_linear(rows, b)) proposals.push_back(*exact);
    // least squares through the normal equations
    std::vector<std::vector<Rational>> ata(k, std::vector<Rational>(k, Rational(0)));
    std::vector<Rational> atb(k, Rational(0));
    for (std::size_t i = 0; i < k; ++i) {
      for (std::size_t j = 0; j < k; ++j)
        for (std::size_t r = 0; r < dim; ++r) ata[i][j] += vs[i][r] * vs[j][r];
      for (std::size_t r = 0; r < dim; ++r) atb[i] += vs[i][r] * b[r];
    }
    if (auto ls = solve_linear(ata, atb)) proposals.push_back(*ls);
  }

  std::uint64_t m = std::max<std::uint64_t>(2 * (k + 1), 2);
  std::uint64_t node_budget = 1u << 14;
  for (std::uint64_t round = 0; round < 64; ++round) {
    for (const auto& gamma : proposals) {
      FinSeq diff = combo_sub(candidate, linear_combination(vectors, gamma));
      if (certify_close(X, diff, target)) {
        PrOutcome out;
        out.independent = false;
        out.gammas = gamma;
        return out;
      }
    }
    // grid descent around the best proposal so far
    if (!proposals.empty() && round > 0 && round % 2 == 0) {
      std::vector<Rational> gamma = proposals.back();
      gamma.resize(k, Rational(0));
      Rational step(1, pow2(round / 2));
      bool improved = true;
      std::uint64_t hops = 0;
      auto score = [&](const std::vector<Rational>& g) {
        return upper_norm(X, combo_sub(candidate, linear_combination(vectors, g)));
      };
      Rational best = score(gamma);
      while (improved && hops++ < 64) {
        improved = false;
        for (std::size_t j = 0; j < k; ++j)
          for (int dir : {-1, 1}) {
            auto cand = gamma;
            cand[j] += step * Rational(dir);
            Rational s = score(cand);
            if (s < best) {
              best = s;
              gamma = cand;
              improved = true;
            }
          }
      }
      proposals.push_back(gamma);
    }
    bool hit = false;
    if (shell_minimum_exceeds(X, ws, m, node_budget, &hit)) {
      PrOutcome out;
      out.independent = true;
      out.m = m;
      return out;
    }
    if (hit) {
      node_budget *= 2;
      if (node_budget > fuel) throw FuelExhausted("independence test undecided");
    } else {
      ++m;
      if (m > 40) throw FuelExhausted("independence test undecided");
    }
  }
  throw FuelExhausted("independence test undecided");
}

// ---- the staged basis -------------------------------------------------------

namespace {

struct UeilState {
  BanachSpace X;
  std::mutex mu;
  std::vector<std::uint64_t> q;
  std::vector<FinSeq> indep;

  explicit UeilState(BanachSpace space) : X(std::move(space)) {}

  void ensure(std::uint64_t upto) {
    std::lock_guard<std::mutex> lk(mu);
    if (q.empty()) {
      std::uint64_t N = 0;
      for (;; ++N) {
        if (N > 64) throw Error("no generator with nonzero norm found");
        FinSeq e = X.e_combo(N);
        if (auto ex = X.combo_norm_exact(e)) {
          if (*ex > Rational(0)) break;
        } else if (creal_cmp(X.combo_norm(e), CReal(Rational(0)), N + 12) == Cmp::gt) {
          break;
        }
      }
      q.push_back(N);
      indep.push_back(X.e_combo(N));
    }
    while (q.size() <= upto) {
      std::uint64_t stage = q.size();  // defining q(stage)
      std::optional<std::uint64_t> pick;
      for (std::uint64_t i = 0; i <= stage && !pick; ++i) {
        PrOutcome r = pr_test(X, indep, X.e_combo(i), stage);
        if (r.independent) pick = i;
      }
      if (pick) {
        q.push_back(*pick);
        indep.push_back(X.e_combo(*pick));
      } else {
        q.push_back(q[0]);
      }
    }
  }
};

}  // namespace

BasisStream ueil(const BanachSpace& X) {
  auto st = std::make_shared<UeilState>(X);
  BasisStream b;
  b.q = Stream::from_rule([st](const Nat& i) -> Nat {
    std::uint64_t idx = to_u64(i);
    st->ensure(idx);
    std::lock_guard<std::mutex> lk(st->mu);
    return Nat(st->q[idx]);
  });
  return b;
}

Stream basis_change(const BanachSpace& X, const BasisStream& b, std::uint64_t i) {
  BanachSpace sp = X;
  BasisStream bs = b;
  auto produced = std::make_shared<std::uint64_t>(0);
  auto stage = std::make_shared<std::uint64_t>(0);
  return Stream::from_producer([sp, bs, i, produced, stage](std::vector<Nat>& cache) {
    std::uint64_t n = (*stage)++;
    std::uint64_t j = *produced;
    FinSeq ei = sp.e_combo(i);
    for (std::uint64_t sc = 0; sc <= n; ++sc) {
      FinSeq s = seqcode::decode(Nat(sc));
      // the sum skips the repeated R positions
      std::vector<Rational> coeffs;
      for (std::size_t kpos = 0; kpos < s.size(); ++kpos) {
        bool in_R = kpos > 0 && bs.in_R_star(kpos);
        std::uint64_t g = to_u64(bs.q.at(kpos));
        if (coeffs.size() <= g) coeffs.resize(g + 1, Rational(0));
        if (!in_R) coeffs[g] += rat_enum::value(s[kpos]);
      }
      FinSeq approx_combo = coeffs_to_combo(std::move(coeffs));
      Rational tol(1, pow2(j + 2));
      if (certify_close(sp, combo_sub(ei, approx_combo), tol)) {
        cache.push_back(Nat(sc));
        ++*produced;
        return;
      }
    }
  });
}

bool identity_char(const BasisStream& b, const FinSeq& s_in, const FinSeq& t_in) {
  const FinSeq& s = s_in.size() <= t_in.size() ? s_in : t_in;
  const FinSeq& t = s_in.size() <= t_in.size() ? t_in : s_in;
  for (std::size_t i = 0; i < s.size(); ++i)
    if (!b.in_R_star(i) && s[i] != t[i]) return false;
  for (std::size_t i = s.size(); i < t.size(); ++i)
    if (!b.in_R_star(i) && t[i] != 0) return false;
  Rational sum_s(0), sum_t(0);
  for (std::size_t i = 0; i < s.size(); ++i)
    if (b.in_R_star(i)) sum_s += rat_enum::value(s[i]);
  for (std::size_t i = 0; i < t.size(); ++i)
    if (b.in_R_star(i)) sum_t += rat_enum::value(t[i]);
  return sum_s == sum_t;
}

Nat eprime_combination_code(const Rational& alpha, const Nat& i,
                            const Rational& beta, const Nat& j) {
  FinSeq si = seqcode::decode(i), sj = seqcode::decode(j);
  std::vector<Rational> a, b;
  for (const auto& v : si) a.push_back(rat_enum::value(v));
  for (const auto& v : sj) b.push_back(rat_enum::value(v));
  if (a.size() < b.size()) a.resize(b.size(), Rational(0));
  for (auto& x : a) x *= alpha;
  for (std::size_t t = 0; t < b.size(); ++t) a[t] += beta * b[t];
  while (!a.empty() && a.back().is_zero()) a.pop_back();
  FinSeq out;
  for (const auto& x : a) out.push_back(rat_enum::index_of(x));
  return seqcode::encode(out);
}

// ---- product box -------------------------------------------------------------

namespace {

struct BoxGrid {
  std::vector<Rational> radius;  // per constrained coordinate
  std::vector<Rational> step;
  std::vector<BigInt> count;

  Nat total() const {
    Nat t(1);
    for (const auto& c : count) t *= c;
    return t;
  }
  std::vector<Rational> center(Nat j) const {
    std::vector<Rational> coords(count.size());
    for (std::size_t i = 0; i < count.size(); ++i) {
      BigInt t = BigInt(j % Nat(count[i]));
      j /= Nat(count[i]);
      coords[i] = rat_min(Rational(t) * step[i] - radius[i], radius[i]);
    }
    return coords;
  }
};

BoxGrid level_grid(const std::function<Rational(std::uint64_t)>& radius,
                   std::uint64_t level) {
  BoxGrid g;
  Rational r(1, pow2(level));
  for (std::uint64_t j = 0; j < level; ++j) {
    auto w = coord_slack(j, r);
    if (!w) break;
    Rational R = radius(j);
    BigInt m = R.is_zero() ? BigInt(1) : ((R + R) / *w).ceil() + 1;
    g.radius.push_back(R);
    g.step.push_back(*w);
    g.count.push_back(m);
  }
  return g;
}

}  // namespace

std::pair<CompactName, ClosedPlus> compact_box(
    std::function<Rational(std::uint64_t)> radius) {
  CompactName K;
  K.meets = true;
  K.level_cover = [radius](std::uint64_t level) {
    auto grid = std::make_shared<BoxGrid>(level_grid(radius, level));
    CoverSpec spec;
    spec.count = grid->total();
    spec.radius = Rational(1, pow2(level));
    spec.center = [grid](const Nat& j) {
      return product_point_index(grid->center(j));
    };
    return spec;
  };
  auto lc = K.level_cover;
  K.cover_codes = Stream::from_rule([lc](const Nat& pos) -> Nat {
    std::uint64_t level = to_u64(pos);
    CoverSpec spec = lc(level);
    if (spec.count > Nat(1u << 16))
      throw FuelExhausted("cover enumeration materializes only low levels");
    std::vector<Ball> balls;
    for (Nat j = 0; j < spec.count; ++j)
      balls.push_back(Ball{spec.center(j), spec.radius});
    return cover_code(balls);
  });
  ClosedPlus dense;
  dense.dense_index = [radius](std::uint64_t i) {
    std::vector<Rational> coords = product_point_coords(Nat(i));
    for (std::size_t j = 0; j < coords.size(); ++j) {
      Rational R = radius(j);
      coords[j] = rat_max(-R, rat_min(coords[j], R));
    }
    return product_point_index(coords);
  };
  return {K, dense};
}

bool box_cover_certified(const std::vector<Rational>& radii,
                         const std::vector<Ball>& balls) {
  // coordinates constrained by at least one ball
  std::size_t m = radii.size();
  std::vector<std::vector<Rational>> candidates(m);
  for (std::size_t n = 0; n < m; ++n) {
    candidates[n].push_back(-radii[n]);
    candidates[n].push_back(radii[n]);
  }
  for (const auto& b : balls) {
    std::vector<Rational> c = product_point_coords(b.center);
    for (std::size_t n = 0; n < m; ++n) {
      auto w = coord_slack(n, b.radius);
      if (!w) continue;
      Rational cn = n < c.size() ? c[n] : Rational(0);
      for (const Rational& endpoint : {cn - *w, cn + *w}) {
        Rational clamped = rat_max(-radii[n], rat_min(endpoint, radii[n]));
        candidates[n].push_back(clamped);
      }
    }
  }
  Nat corners(1);
  for (auto& c : candidates) {
    std::sort(c.begin(), c.end());
    c.erase(std::unique(c.begin(), c.end()), c.end());
    corners *= c.size();
    if (corners > Nat(1u << 20))
      throw FuelExhausted("corner test has too many candidate corners");
  }
  std::vector<std::size_t> pick(m, 0);
  for (;;) {
    std::vector<Rational> gamma(m);
    for (std::size_t n = 0; n < m; ++n) gamma[n] = candidates[n][pick[n]];
    bool covered = false;
    for (const auto& b : balls) {
      std::vector<Rational> c = product_point_coords(b.center);
      bool inside = true;
      for (std::size_t n = 0; inside; ++n) {
        auto w = coord_slack(n, b.radius);
        if (!w) break;  // all further coordinates unconstrained
        Rational cn = n < c.size() ? c[n] : Rational(0);
        Rational gn = n < m ? gamma[n] : Rational(0);
        if ((gn - cn).abs() >= *w) inside = false;
      }
      if (inside) {
        covered = true;
        break;
      }
    }
    if (!covered) return false;
    std::size_t n = 0;
    while (n < m && ++pick[n] == candidates[n].size()) pick[n++] = 0;
    if (n == m) break;
  }
  return true;
}

ProductPoint phi_embed(const PFName& g, const BasisStream& b) {
  ProductPoint p;
  PFName f = g;
  BasisStream bs = b;
  p.coord = [f, bs](std::uint64_t n) {
    FinSeq combo = bs.eprime_combo(seqcode::decode(Nat(n)));
    return f.func(CPoint::from_combo(combo));
  };
  return p;
}

// ---- candidate sets -----------------------------------------------------------

namespace {

struct LinearRelation {
  Rational alpha, beta;
  std::uint64_t i = 0, j = 0, n = 0;
};

struct RelationScan {
  std::vector<LinearRelation> found;
};

std::shared_ptr<RelationScan> scan_relations(const BasisStream& b) {
  auto out = std::make_shared<RelationScan>();
  // pairs of codes naming the same point
  for (std::uint64_t mcode = 0; mcode < 40; ++mcode)
    for (std::uint64_t ncode = mcode + 1; ncode < 40; ++ncode)
      if (identity_char(b, seqcode::decode(Nat(mcode)), seqcode::decode(Nat(ncode))))
        out->found.push_back({Rational(1), Rational(0), mcode, mcode, ncode});
  // rational combinations landing back on a coded point
  for (std::uint64_t ai = 1; ai < 6; ++ai)
    for (std::uint64_t bi = 0; bi < 6; ++bi)
      for (std::uint64_t i = 0; i < 12; ++i)
        for (std::uint64_t j = 0; j < 12; ++j) {
          Rational alpha = rat_enum::value(Nat(ai)), beta = rat_enum::value(Nat(bi));
          Nat k = eprime_combination_code(alpha, Nat(i), beta, Nat(j));
          if (!fits_u64(k)) continue;
          std::uint64_t n = to_u64(k);
          if (beta.is_zero() && alpha == Rational(1) && n == i) continue;
          if (out->found.size() >= 64) return out;
          out->found.push_back({alpha, beta, i, j, n});
        }
  return out;
}

std::optional<Ball> violation_ball(const LinearRelation& rel, const Nat& point_code) {
  std::vector<Rational> x = product_point_coords(point_code);
  auto at = [&x](std::uint64_t i) { return i < x.size() ? x[i] : Rational(0); };
  Rational v = at(rel.n) - rel.alpha * at(rel.i) - rel.beta * at(rel.j);
  if (v.is_zero()) return std::nullopt;
  Rational margin = v.abs();
  std::uint64_t base = std::max({rel.i, rel.j, rel.n});
  for (std::uint64_t h = base + 1; h <= base + 46; ++h) {
    Rational r(1, pow2(h));
    auto wi = coord_slack(rel.i, r), wj = coord_slack(rel.j, r), wn = coord_slack(rel.n, r);
    if (!wi || !wj || !wn) continue;
    Rational spread = rel.alpha.abs() * *wi + rel.beta.abs() * *wj + *wn;
    if (spread < margin) return Ball{point_code, r};
  }
  return std::nullopt;
}

}  // namespace

CandidateSets candidate_sets(const BanachSpace& X, const BasisStream& b) {
  CandidateSets cs;
  BanachSpace sp = X;
  BasisStream bs = b;
  auto radius_memo = std::make_shared<std::map<std::uint64_t, Rational>>();
  auto radius_mu = std::make_shared<std::mutex>();
  cs.radius = [sp, bs, radius_memo, radius_mu](std::uint64_t n) {
    {
      std::lock_guard<std::mutex> lk(*radius_mu);
      auto it = radius_memo->find(n);
      if (it != radius_memo->end()) return it->second;
    }
    FinSeq combo = bs.eprime_combo(seqcode::decode(Nat(n)));
    Rational r;
    if (auto ex = sp.combo_norm_exact(combo))
      r = *ex;
    else
      r = sp.combo_norm(combo).approx(12) + Rational(1, pow2(12));
    std::lock_guard<std::mutex> lk(*radius_mu);
    radius_memo->emplace(n, r);
    return r;
  };
  auto box = compact_box(cs.radius);
  cs.box = box.first;
  auto rels = std::make_shared<std::optional<std::shared_ptr<RelationScan>>>();
  auto mu = std::make_shared<std::mutex>();
  cs.linear.ball = [bs, rels, mu](std::uint64_t idx) -> std::optional<Ball> {
    std::shared_ptr<RelationScan> scan;
    {
      std::lock_guard<std::mutex> lk(*mu);
      if (!rels->has_value()) *rels = scan_relations(bs);
      scan = rels->value();
    }
    std::uint64_t rel_idx = idx % 64, point = idx / 64;
    if (rel_idx >= scan->found.size()) return std::nullopt;
    return violation_ball(scan->found[rel_idx], Nat(point));
  };
  return cs;
}

ClosedMinus h_extensions(const PFName& f, const BasisStream& b,
                         const CandidateSets& cs) {
  ClosedMinus constraints;
  PFName pf = f;
  BasisStream bs = b;
  constraints.ball = [pf, bs](std::uint64_t idx) -> std::optional<Ball> {
    // constraint rank: diagonal over (dense point of A, coordinate code)
    std::uint64_t rank = idx % 64, point = idx / 64;
    std::uint64_t d = 0, t = rank;
    while (t >= d + 1) t -= ++d;
    std::uint64_t m = t, n = d - t;
    std::vector<Rational> x = product_point_coords(Nat(point));
    Rational xn = n < x.size() ? x[n] : Rational(0);
    FinSeq ym = seqcode::decode(Nat(pf.subspace.dense_index(m)));
    FinSeq an = bs.eprime_combo(seqcode::decode(Nat(n)));
    CReal fv = pf.func(CPoint::from_combo(ym));
    CReal nv = pf.space.combo_norm(combo_sub(ym, an));
    Rational fhi = fv.approx(12) + Rational(1, pow2(12));
    Rational flo = fv.approx(12) - Rational(1, pow2(12));
    Rational nhi = nv.approx(12) + Rational(1, pow2(12));
    Rational margin = rat_max(xn - (fhi + nhi), (flo - nhi) - xn);
    if (!(margin > Rational(0))) return std::nullopt;
    for (std::uint64_t h = n + 1; h <= n + 46; ++h) {
      Rational r(1, pow2(h));
      auto wn = coord_slack(n, r);
      if (wn && *wn < margin) return Ball{Nat(point), r};
    }
    return std::nullopt;
  };
  return ClosedMinus::interleave2(cs.linear, constraints);
}

PFName chi_recover(const ProductPoint& a, const BanachSpace& X,
                   const BasisStream& b, const CReal& r) {
  PFName g;
  g.space = X;
  g.subspace.dense_index = [](std::uint64_t i) { return Nat(i); };
  g.norm_r = r;
  ProductPoint ap = a;
  BanachSpace sp = X;
  BasisStream bs = b;
  g.func = [ap, sp, bs](const CPoint& x) {
    return CReal::from_approx([ap, sp, bs, x](std::uint64_t k) {
      // |g(x) - a_n| <= r ||x - a_{e'}(n)|| < 2^-(k+1), and a_n is read off
      // to 2^-(k+1), so the total stays within 2^-k
      for (std::uint64_t round = 2; round < 40; ++round) {
        for (std::uint64_t n = 0; n < (std::uint64_t(1) << round) && n < 4096; ++n) {
          FinSeq combo = bs.eprime_combo(seqcode::decode(Nat(n)));
          CReal d = point_dist(sp, x, CPoint::from_combo(combo));
          if (creal_cmp(d, CReal(Rational(1, pow2(k + 1))), round + k) == Cmp::lt)
            return ap.coord(n).approx(k + 1);
        }
      }
      throw FuelExhausted("no close fundamental point certified");
    });
  };
  return g;
}

// ---- the reversal -------------------------------------------------------------

CReal delta_n(const Stream& p, const Stream& q, std::uint64_t n) {
  Stream ps = p, qs = q;
  return CReal::from_approx([ps, qs, n](std::uint64_t k) -> Rational {
    for (std::uint64_t i = 0; i <= k; ++i) {
      if (ps.at(i) == Nat(n)) return Rational(1, pow2(i));
      if (qs.at(i) == Nat(n)) return -Rational(1, pow2(i));
    }
    return Rational(0);
  });
}

Rational delta_n_planted(const SepPlant& plant, std::uint64_t n) {
  for (std::uint64_t i = 0; i < 2 * plant.value_bound + 4; ++i) {
    if (plant.p.at(i) == Nat(n)) return Rational(1, pow2(i));
    if (plant.q.at(i) == Nat(n)) return -Rational(1, pow2(i));
  }
  return Rational(0);
}

Rational coord_norm_exact(const Rational& alpha, const Rational& beta,
                          const Rational& delta) {
  if (delta > Rational(0)) {
    Rational scale = (Rational(1) - delta) / (Rational(1) + delta);
    return rat_max((scale * alpha + beta).abs(), (alpha - beta).abs());
  }
  if (delta < Rational(0)) {
    Rational scale = (Rational(1) + delta) / (Rational(1) - delta);
    return rat_max((scale * alpha - beta).abs(), (alpha + beta).abs());
  }
  return rat_max((alpha + beta).abs(), (alpha - beta).abs());
}

CReal coord_norm(const Rational& alpha, const Rational& beta, std::uint64_t n,
                 const Stream& p, const Stream& q) {
  Stream ps = p, qs = q;
  std::uint64_t pad = bit_length((alpha.abs() * Rational(2) + Rational(2)).ceil()) + 1;
  return CReal::from_approx([ps, qs, n, alpha, beta, pad](std::uint64_t k) {
    std::uint64_t S = k + pad;
    for (std::uint64_t i = 0; i <= S; ++i) {
      if (ps.at(i) == Nat(n)) return coord_norm_exact(alpha, beta, Rational(1, pow2(i)));
      if (qs.at(i) == Nat(n)) return coord_norm_exact(alpha, beta, -Rational(1, pow2(i)));
    }
    // no witness yet: all three case formulas agree within 2 |alpha| 2^-S
    return coord_norm_exact(alpha, beta, Rational(0));
  });
}

namespace {

// block view of a combo under the Q^2-sequence identification
std::vector<std::pair<Rational, Rational>> block_coeffs(const FinSeq& s) {
  std::vector<Rational> c = combo_coeffs(s);
  std::vector<std::pair<Rational, Rational>> blocks((c.size() + 1) / 2,
                                                    {Rational(0), Rational(0)});
  for (std::size_t g = 0; g < c.size(); ++g) {
    if (g % 2 == 0)
      blocks[g / 2].first = c[g];
    else
      blocks[g / 2].second = c[g];
  }
  return blocks;
}

Rational f_on_combo(const FinSeq& s) {
  Rational out(0);
  auto blocks = block_coeffs(s);
  for (std::size_t i = 0; i < blocks.size(); ++i)
    out += Rational(1, pow2(i + 1)) * blocks[i].first;
  return out;
}

CReal lipschitz_limit(std::function<Rational(const FinSeq&)> exact, const CPoint& x) {
  if (auto c = x.exact_combo()) return CReal(exact(*c));
  CPoint p = x;
  return CReal::from_approx(
      [exact, p](std::uint64_t k) { return exact(p.rep(k + 2)); });
}

}  // namespace

PseudoNorm sep_block_norm(const Stream& p, const Stream& q) {
  PseudoNorm pn;
  pn.id = "sep-block";
  Stream ps = p, qs = q;
  pn.eval = [ps, qs](const FinSeq& s) {
    auto blocks = block_coeffs(s);
    CReal total{Rational(0)};
    for (std::size_t n = 0; n < blocks.size(); ++n)
      total = total + coord_norm(blocks[n].first, blocks[n].second, n, ps, qs)
                          .scale(Rational(1, pow2(n + 1)));
    return total;
  };
  return pn;
}

PseudoNorm sep_block_norm_planted(const SepPlant& plant) {
  PseudoNorm pn;
  pn.id = "sep-block-planted";
  auto delta = std::make_shared<std::map<std::uint64_t, Rational>>();
  auto mu = std::make_shared<std::mutex>();
  SepPlant pl = plant;
  auto delta_at = [delta, mu, pl](std::uint64_t n) {
    std::lock_guard<std::mutex> lk(*mu);
    auto it = delta->find(n);
    if (it == delta->end()) it = delta->emplace(n, delta_n_planted(pl, n)).first;
    return it->second;
  };
  pn.eval_exact = [delta_at](const FinSeq& s) -> std::optional<Rational> {
    Rational total(0);
    auto blocks = block_coeffs(s);
    for (std::size_t n = 0; n < blocks.size(); ++n)
      total += Rational(1, pow2(n + 1)) *
               coord_norm_exact(blocks[n].first, blocks[n].second, delta_at(n));
    return total;
  };
  auto ex = pn.eval_exact;
  pn.eval = [ex](const FinSeq& s) { return CReal(*ex(s)); };
  pn.eval_interval = [delta_at](const std::vector<RatInterval>& c) {
    RatInterval total{Rational(0), Rational(0)};
    auto iv = [&c](std::size_t i) {
      return i < c.size() ? c[i] : RatInterval{Rational(0), Rational(0)};
    };
    std::size_t blocks = (c.size() + 1) / 2;
    for (std::size_t n = 0; n < blocks; ++n) {
      Rational d = delta_at(n);
      RatInterval a = iv(2 * n), b = iv(2 * n + 1);
      Rational scale = d > Rational(0)
                           ? (Rational(1) - d) / (Rational(1) + d)
                           : (d < Rational(0) ? (Rational(1) + d) / (Rational(1) - d)
                                              : Rational(1));
      // the two linear forms of the case split, as intervals
      RatInterval f1, f2;
      if (d > Rational(0)) {
        f1 = {scale * a.lo + b.lo, scale * a.hi + b.hi};
        f2 = {a.lo - b.hi, a.hi - b.lo};
      } else if (d < Rational(0)) {
        f1 = {scale * a.lo - b.hi, scale * a.hi - b.lo};
        f2 = {a.lo + b.lo, a.hi + b.hi};
      } else {
        f1 = {a.lo + b.lo, a.hi + b.hi};
        f2 = {a.lo - b.hi, a.hi - b.lo};
      }
      RatInterval m1 = abs_interval(f1), m2 = abs_interval(f2);
      total.lo += Rational(1, pow2(n + 1)) * rat_max(m1.lo, m2.lo);
      total.hi += Rational(1, pow2(n + 1)) * rat_max(m1.hi, m2.hi);
    }
    return total;
  };
  pn.effective_coords = [delta_at](const std::vector<Rational>& c) {
    std::vector<Rational> out;
    std::size_t blocks = (c.size() + 1) / 2;
    auto at = [&c](std::size_t i) { return i < c.size() ? c[i] : Rational(0); };
    for (std::size_t n = 0; n < blocks; ++n) {
      Rational d = delta_at(n);
      Rational a = at(2 * n), b = at(2 * n + 1);
      Rational w(1, pow2(n + 1));
      if (d > Rational(0)) {
        Rational scale = (Rational(1) - d) / (Rational(1) + d);
        out.push_back(w * (scale * a + b));
        out.push_back(w * (a - b));
      } else if (d < Rational(0)) {
        Rational scale = (Rational(1) + d) / (Rational(1) - d);
        out.push_back(w * (scale * a - b));
        out.push_back(w * (a + b));
      } else {
        out.push_back(w * (a + b));
        out.push_back(w * (a - b));
      }
    }
    return out;
  };
  return pn;
}

FinSeq z_combo(std::uint64_t n) {
  FinSeq s(2 * n + 1, Nat(0));
  s.push_back(Nat(1));
  return s;
}

namespace {

ClosedPlus alpha_part_dense() {
  ClosedPlus dense;
  dense.dense_index = [](std::uint64_t i) {
    std::vector<Rational> c = combo_coeffs(seqcode::decode(Nat(i)));
    for (std::size_t g = 1; g < c.size(); g += 2) c[g] = Rational(0);
    return seqcode::encode(coeffs_to_combo(std::move(c)));
  };
  return dense;
}

PFName hb_instance_around(PseudoNorm pn) {
  PFName f;
  f.space = BanachSpace(std::move(pn));
  f.subspace = alpha_part_dense();
  f.func = [](const CPoint& x) { return lipschitz_limit(f_on_combo, x); };
  f.norm_r = CReal(Rational(1));
  return f;
}

}  // namespace

PFName build_hb_instance(const Stream& p, const Stream& q) {
  return hb_instance_around(sep_block_norm(p, q));
}

PFName build_hb_instance_planted(const SepPlant& plant) {
  return hb_instance_around(sep_block_norm_planted(plant));
}

Stream decode_separator(const Stream& p, const Stream& q, const Stream& g_table,
                        const Stream& f_table) {
  auto checked = std::make_shared<bool>(false);
  auto mu = std::make_shared<std::mutex>();
  Stream gt = g_table, ft = f_table;
  return Stream::from_rule([gt, ft, checked, mu](const Nat& npos) -> Nat {
    {
      std::lock_guard<std::mutex> lk(*mu);
      if (!*checked) {
        *checked = true;
        // flag a non-extension loudly before trusting any sign
        for (std::uint64_t m = 0; m < 4; ++m) {
          FinSeq probe(2 * m, Nat(0));
          probe.push_back(Nat(1));
          Nat code = seqcode::encode(probe);
          CReal diff = table_value(gt, code) - table_value(ft, code);
          if (creal_cmp(diff.abs(), CReal(Rational(1, 64)), 12) == Cmp::gt)
            throw MalformedName("claimed extension disagrees with f on A");
        }
      }
    }
    std::uint64_t n = to_u64(npos);
    Rational v = table_value(gt, seqcode::encode(z_combo(n))).approx(n + 2);
    return v > Rational(0) ? 1 : 0;
  });
}

OracleRealizer analytic_hb_oracle(const PlantedInstance& sep_inst) {
  const auto& plant = std::any_cast<const SepPlant&>(sep_inst.data);
  OracleRealizer g;
  g.problem_id = "hb";
  g.instance_class = "block-norm instances built from planted separations";
  SepPlant pl = plant;
  g.realize = [pl](const Stream&) {
    auto eps = [pl](std::uint64_t i) -> Rational {
      if (Nat(i) < Nat(pl.value_bound) && pl.solution.at(std::uint64_t(i)) == 0)
        return Rational(-1);
      return Rational(1);
    };
    auto g_exact = [eps](const FinSeq& s) {
      Rational out(0);
      auto blocks = block_coeffs(s);
      for (std::size_t i = 0; i < blocks.size(); ++i)
        out += Rational(1, pow2(i + 1)) * (blocks[i].first + eps(i) * blocks[i].second);
      return out;
    };
    PFName gf;
    gf.space = BanachSpace(sep_block_norm_planted(pl));
    gf.subspace.dense_index = [](std::uint64_t i) { return Nat(i); };
    gf.func = [g_exact](const CPoint& x) { return lipschitz_limit(g_exact, x); };
    gf.norm_r = CReal(Rational(1));
    return functional_table(gf);
  };
  return g;
}

// ---- packing -----------------------------------------------------------------

Stream pack_parts(std::vector<Stream> parts) {
  auto ps = std::make_shared<std::vector<Stream>>(std::move(parts));
  return Stream::from_rule([ps](const Nat& code) -> Nat {
    auto ij = seqcode::try_unpair(code);
    if (!ij || !fits_u64(ij->first)) return 0;
    std::uint64_t i = to_u64(ij->first);
    if (i >= ps->size()) return 0;
    return (*ps)[i].at(ij->second);
  });
}

Stream part_of(const Stream& packed, std::uint64_t i) {
  return Stream::from_rule(
      [packed, i](const Nat& j) { return packed.at(seqcode::pair(Nat(i), j)); });
}

// ---- the reductions -----------------------------------------------------------

Reduction sep_le_hb() {
  Reduction r;
  r.id = "sep_le_hb";
  r.source = "sep";
  r.target = "hb";
  r.H = Machine("sep_le_hb.H", [](Stream pq) {
    Stream p = pq.even_part(), q = pq.odd_part();
    PFName f = build_hb_instance(p, q);
    ClosedPlus dense = f.subspace;
    Stream a_codes = Stream::from_rule(
        [dense](const Nat& i) { return dense.dense_index(to_u64(i)); });
    return pack_parts({f.space.fact_stream(), a_codes, functional_table(f),
                       CReal(Rational(1)).name(), Stream::constant(Nat(0)), p, q});
  });
  r.K = Machine("sep_le_hb.K", [](Stream xw) {
    Stream pq = xw.even_part();
    Stream p = pq.even_part(), q = pq.odd_part();
    PFName f = build_hb_instance(p, q);
    return decode_separator(p, q, xw.odd_part(), functional_table(f));
  });
  r.planted_oracle = analytic_hb_oracle;
  return r;
}

Problem hb_problem() {
  Problem f;
  f.id = "hb";
  f.verify = [](const Stream& x, const Stream& w, std::uint64_t depth) -> Verdict {
    Stream a_codes = part_of(x, 1);
    Stream f_table = part_of(x, 2);
    Nat tag = part_of(x, 4).at(std::uint64_t(0));
    std::optional<BanachSpace> space;
    if (tag == 0) {
      space.emplace(sep_block_norm(part_of(x, 5), part_of(x, 6)));
    } else if (tag == 1) {
      space.emplace(max_two_generator_norm());
    } else {
      return Verdict::Reject;
    }
    std::uint64_t samples = std::min<std::uint64_t>(depth, 8);
    for (std::uint64_t j = 0; j < samples; ++j) {
      Nat code = a_codes.at(j);
      CReal diff = table_value(w, code) - table_value(f_table, code);
      if (creal_cmp(diff.abs(), CReal(Rational(1, pow2(8))), 14) == Cmp::gt)
        return Verdict::Reject;
      CReal bound = space->combo_norm(seqcode::decode(code))
                        .scale(Rational(1) + Rational(1, 64));
      if (creal_cmp(table_value(w, code).abs(), bound, 14) == Cmp::gt)
        return Verdict::Reject;
    }
    return Verdict::Accept;
  };
  return f;
}

// ---- planted two-generator extension problems ----------------------------------

namespace {

PFName two_generator_instance(bool whole, const Rational& u) {
  PFName f;
  f.space = BanachSpace(max_two_generator_norm());
  if (whole) {
    f.subspace.dense_index = [](std::uint64_t i) { return Nat(i); };
    Rational v = Rational(1) - u;
    auto exact = [u, v](const FinSeq& s) {
      auto c = combo_coeffs(s);
      Rational c0 = c.size() > 0 ? c[0] : Rational(0);
      Rational c1 = c.size() > 1 ? c[1] : Rational(0);
      return u * c0 + v * c1;
    };
    f.func = [exact](const CPoint& x) { return lipschitz_limit(exact, x); };
  } else {
    // A = span{e0 + e1}, f(t,t) = t
    f.subspace.dense_index = [](std::uint64_t i) {
      Nat t = Nat(i);
      return seqcode::encode(FinSeq{t, t});
    };
    auto exact = [](const FinSeq& s) {
      auto c = combo_coeffs(s);
      return c.empty() ? Rational(0) : c[0];
    };
    f.func = [exact](const CPoint& x) { return lipschitz_limit(exact, x); };
  }
  f.norm_r = CReal(Rational(1));
  return f;
}

}  // namespace

PlantedInstance make_hb_instance(const HbPlant& plant) {
  PFName f = two_generator_instance(plant.subspace_is_whole, plant.extension_weight);
  ClosedPlus dense = f.subspace;
  Stream a_codes =
      Stream::from_rule([dense](const Nat& i) { return dense.dense_index(to_u64(i)); });
  PlantedInstance inst;
  inst.problem_id = "hb";
  inst.name = pack_parts({f.space.fact_stream(), a_codes, functional_table(f),
                          CReal(Rational(1)).name(), Stream::constant(Nat(1))});
  inst.data = plant;
  return inst;
}

PlantedInstance gen_hb(std::uint64_t seed) {
  std::mt19937_64 rng(seed * 0x8f1bbcdcbfa53e0bull + 29);
  HbPlant plant;
  plant.subspace_is_whole = seed % 3 == 0;
  plant.extension_weight = Rational(rng() % 17, 16);
  return make_hb_instance(plant);
}

HbPipeline hb_pipeline(const PFName& f) {
  BasisStream b = ueil(f.space);
  CandidateSets cs = candidate_sets(f.space, b);
  ClosedMinus H = h_extensions(f, b, cs);
  SelTree tree(product_space(), cs.box, H);
  return HbPipeline{b, cs, H, tree};
}

PFName hb_recover_from_path(const HbPipeline& pipe, const BanachSpace& X,
                            const Stream& path) {
  ProductPoint a = product_point_from_name(sel_point(pipe.tree, path));
  return chi_recover(a, X, pipe.basis, CReal(Rational(1)));
}

Stream box_target_path(std::function<Rational(std::uint64_t)> radius,
                       std::function<Rational(std::uint64_t)> target) {
  return Stream::from_rule([radius, target](const Nat& lvl) -> Nat {
    std::uint64_t level = to_u64(lvl);
    BoxGrid grid = level_grid(radius, level);
    Nat index(0);
    Nat scale(1);
    for (std::size_t i = 0; i < grid.count.size(); ++i) {
      // nearest grid slot to the target coordinate
      Rational pos = (target(i) + grid.radius[i]) / grid.step[i] + Rational(1, 2);
      BigInt t = pos.floor();
      if (t < 0) t = 0;
      if (t >= grid.count[i]) t = grid.count[i] - 1;
      index += scale * t;
      scale *= grid.count[i];
    }
    return index;
  });
}

std::function<Rational(std::uint64_t)> hb_planted_target(const PlantedInstance& inst,
                                                         const BasisStream& b) {
  const auto& plant = std::any_cast<const HbPlant&>(inst.data);
  Rational u = plant.extension_weight;
  Rational v = Rational(1) - u;
  BasisStream bs = b;
  return [u, v, bs](std::uint64_t n) {
    std::vector<Rational> c = combo_coeffs(bs.eprime_combo(seqcode::decode(Nat(n))));
    Rational c0 = c.size() > 0 ? c[0] : Rational(0);
    Rational c1 = c.size() > 1 ? c[1] : Rational(0);
    return u * c0 + v * c1;
  };
}

namespace {

PFName rebuild_hb_instance(const Stream& packed) {
  Nat tag = part_of(packed, 4).at(std::uint64_t(0));
  PFName f;
  if (tag == 0) {
    f.space = BanachSpace(sep_block_norm(part_of(packed, 5), part_of(packed, 6)));
  } else if (tag == 1) {
    f.space = BanachSpace(max_two_generator_norm());
  } else {
    throw MalformedName("unknown pseudo-norm tag in a packed instance");
  }
  Stream a_codes = part_of(packed, 1);
  f.subspace.dense_index = [a_codes](std::uint64_t i) { return a_codes.at(i); };
  Stream f_table = part_of(packed, 2);
  f.func = [f_table](const CPoint& x) {
    if (auto c = x.exact_combo()) return table_value(f_table, seqcode::encode(*c));
    CPoint p = x;
    return CReal::from_approx([f_table, p](std::uint64_t k) {
      return table_value(f_table, seqcode::encode(p.rep(k + 2))).approx(k + 2);
    });
  };
  f.norm_r = CReal::from_name(part_of(packed, 3));
  return f;
}

}  // namespace

Reduction hb_le_sep() {
  Reduction r;
  r.id = "hb_le_sep";
  r.source = "hb";
  r.target = "sep";
  r.H = Machine("hb_le_sep.H", [](Stream x) {
    PFName f = rebuild_hb_instance(x);
    HbPipeline pipe = hb_pipeline(f);
    BoundedTreeView bounded = pipe.tree.view();
    BinaryTreeView image;
    BoundedTreeView captured = bounded;
    image.member = [captured](const std::vector<Nat>& bits) {
      return bounded_block_image_member(captured, bits);
    };
    return Stream::interleave(phi_enumeration_stream(image, 0, Nat(0)),
                              phi_enumeration_stream(image, 1, Nat(1)));
  });
  r.K = Machine("hb_le_sep.K", [](Stream xw) {
    Stream x = xw.even_part();
    Stream rsep = xw.odd_part();
    PFName f = rebuild_hb_instance(x);
    HbPipeline pipe = hb_pipeline(f);
    // k(r) through the binary image, then block decoding, then the limit
    auto prefix = std::make_shared<std::vector<Nat>>();
    Stream bits = Stream::from_producer([rsep, prefix](std::vector<Nat>& cache) {
      if (prefix->size() > 100000)
        throw FuelExhausted(
            "block lengths past the first selection levels outgrow any demand "
            "budget; drive the staged pipeline instead");
      Nat bit = rsep.at(seqcode::encode(*prefix) + 2);
      if (bit > 1) throw MalformedName("separator must be binary");
      prefix->push_back(bit);
      cache.push_back(bit);
    });
    SelTree tree = pipe.tree;
    Stream bound = Stream::from_rule(
        [tree](const Nat& i) { return tree.bound(to_u64(i)); });
    Stream path = decode_bounded_path(bits, bound);
    return functional_table(hb_recover_from_path(pipe, f.space, path));
  });
  r.planted_oracle = [](const PlantedInstance& inst) {
    OracleRealizer g;
    g.problem_id = "sep";
    g.instance_class = "block codings of planted extension selection trees";
    PlantedInstance captured = inst;
    g.realize = [captured](const Stream&) {
      PFName f = rebuild_hb_instance(captured.name);
      HbPipeline pipe = hb_pipeline(f);
      Stream path = box_target_path(pipe.sets.radius,
                                    hb_planted_target(captured, pipe.basis));
      SelTree tree = pipe.tree;
      Stream bound =
          Stream::from_rule([tree](const Nat& i) { return tree.bound(to_u64(i)); });
      Stream wstar = encode_bounded_path(path, bound);
      return Stream::from_rule([wstar](const Nat& c) -> Nat {
        if (c == 0) return 0;
        if (c == 1) return 1;
        FinSeq s = seqcode::decode(c - 2);
        for (const auto& bit : s)
          if (bit > 1) return 0;
        return wstar.at(Nat(s.size()));
      });
    };
    return g;
  };
  return r;
}

}  // namespace sepkit
