#include "blotto/fractional.hpp"

#include "blotto/errors.hpp"

#include <algorithm>
#include <set>
#include <string>

namespace blotto {

CostVectors cost_vectors(const Allocation& x, const Allocation& xp) {
  if (x.size() != xp.size()) throw InvalidInput("strategies differ in length");
  CostVectors cv;
  cv.c.resize(x.size());
  cv.cprime.resize(x.size());
  for (std::size_t i = 0; i < x.size(); ++i) {
    if (x[i] <= xp[i]) {
      cv.c[i] = x[i];
      cv.cprime[i] = xp[i] - x[i];
    } else {
      cv.cprime[i] = xp[i];
      cv.c[i] = x[i] - xp[i];
    }
  }
  return cv;
}

bool is_valid_response(const Allocation& x, const Allocation& xp, const FractionalResponse& r,
                       Troops m) {
  const std::size_t k = x.size();
  if (r.h.size() != k || r.hprime.size() != k) return false;
  CostVectors cv = cost_vectors(x, xp);
  Rational spent = 0;
  for (std::size_t i = 0; i < k; ++i) {
    const Rational& h = r.h[i];
    const Rational& hp = r.hprime[i];
    if (sgn(h) < 0 || h > 1 || sgn(hp) < 0 || hp > 1) return false;
    if (x[i] <= xp[i] ? hp > h : h > hp) return false;
    spent += h * cv.c[i] + hp * cv.cprime[i];
  }
  return spent <= m;
}

Allocation strategy_from_h(const Allocation& x, const Allocation& xp, const FractionalResponse& r,
                           Troops m) {
  for (std::size_t i = 0; i < r.h.size(); ++i)
    if ((r.h[i] != 0 && r.h[i] != 1) || (r.hprime[i] != 0 && r.hprime[i] != 1))
      throw InvalidInput("strategy_from_h needs a 0/1 response");
  if (!is_valid_response(x, xp, r, m)) throw InvalidInput("response violates ordering or budget");
  CostVectors cv = cost_vectors(x, xp);
  Allocation y(x.size(), 0);
  for (std::size_t i = 0; i < x.size(); ++i)
    y[i] = (r.h[i] == 1 ? cv.c[i] : 0) + (r.hprime[i] == 1 ? cv.cprime[i] : 0);
  return y;
}

std::vector<int> Signature::battlefields() const {
  std::vector<int> out;
  for (int v : {a, b, cidx})
    if (v != kNoBattlefield) out.push_back(v);
  std::sort(out.begin(), out.end());
  out.erase(std::unique(out.begin(), out.end()), out.end());
  return out;
}

std::strong_ordering Signature::operator<=>(const Signature& o) const {
  if (auto c = std::tie(a, b, cidx, mu, x_abc, xprime_abc) <=>
               std::tie(o.a, o.b, o.cidx, o.mu, o.x_abc, o.xprime_abc);
      c != 0)
    return c;
  if (int c = cmp(udot1, o.udot1); c != 0) return c < 0 ? std::strong_ordering::less : std::strong_ordering::greater;
  if (int c = cmp(udot2, o.udot2); c != 0) return c < 0 ? std::strong_ordering::less : std::strong_ordering::greater;
  return std::strong_ordering::equal;
}

std::vector<Rational> rational_weights(const GameInstance& inst) {
  std::vector<Rational> w;
  for (Weight v : inst.weights()) w.emplace_back(static_cast<long>(v));
  return w;
}

namespace {

struct Choice {
  int a = kNoBattlefield;
  int b = kNoBattlefield;
  int d = kNoBattlefield;
};

}  // namespace

FractionalTrace fractional_trace(const Allocation& x, const Allocation& xp,
                                 const std::vector<Rational>& weights, Troops m,
                                 const Rational& offset) {
  const int k = static_cast<int>(x.size());
  if (static_cast<int>(xp.size()) != k || static_cast<int>(weights.size()) != k)
    throw InvalidInput("strategy and weight lengths differ");
  CostVectors cv = cost_vectors(x, xp);
  std::vector<Rational> r(k), rp(k);
  for (int i = 0; i < k; ++i) {
    r[i] = Rational(static_cast<long>(cv.c[i])) / weights[i];
    rp[i] = Rational(static_cast<long>(cv.cprime[i])) / weights[i];
  }
  std::vector<bool> cheap_first(k);  // x_i <= x'_i
  for (int i = 0; i < k; ++i) cheap_first[i] = x[i] <= xp[i];

  FractionalTrace out;
  auto& h = out.response.h;
  auto& hp = out.response.hprime;
  h.assign(k, Rational(0));
  hp.assign(k, Rational(0));
  Rational left(static_cast<long>(m));
  Rational lead = offset;

  auto avail_h = [&](int i) { return h[i] < 1 && (cheap_first[i] || h[i] < hp[i]); };
  auto avail_hp = [&](int i) { return hp[i] < 1 && (!cheap_first[i] || hp[i] < h[i]); };
  auto joint = [&](int i) { return h[i] < 1 && hp[i] < 1; };

  Choice last;
  const int guard = 1000 + 64 * k * k;
  for (;;) {
    Choice ch;
    for (int i = 0; i < k; ++i) {
      if (avail_h(i) && (ch.a == kNoBattlefield || r[i] < r[ch.a])) ch.a = i;
      if (avail_hp(i) && (ch.b == kNoBattlefield || rp[i] < rp[ch.b])) ch.b = i;
      if (joint(i) && (ch.d == kNoBattlefield || r[i] + rp[i] < r[ch.d] + rp[ch.d])) ch.d = i;
    }
    enum { None, RaiseH, RaiseHp, Pair, Joint } move = None;
    if (sgn(lead) < 0 && ch.a != kNoBattlefield) move = RaiseH;
    else if (sgn(lead) > 0 && ch.b != kNoBattlefield) move = RaiseHp;
    else if (ch.a != kNoBattlefield && ch.b != kNoBattlefield &&
             (ch.d == kNoBattlefield || r[ch.a] + rp[ch.b] <= r[ch.d] + rp[ch.d]))
      move = Pair;
    else if (ch.d != kNoBattlefield)
      move = Joint;
    if (move == None) {
      last = ch;
      break;
    }

    // t is the increase of the primary element; rate is troops per unit t.
    Rational limit, rate;
    auto tighten = [&](const Rational& v) {
      if (v < limit) limit = v;
    };
    switch (move) {
      case RaiseH: {
        int i = ch.a;
        limit = 1 - h[i];
        if (!cheap_first[i]) tighten(hp[i] - h[i]);
        tighten(-lead / weights[i]);
        rate = cv.c[i];
        break;
      }
      case RaiseHp: {
        int i = ch.b;
        limit = 1 - hp[i];
        if (cheap_first[i]) tighten(h[i] - hp[i]);
        tighten(lead / weights[i]);
        rate = cv.cprime[i];
        break;
      }
      case Pair: {
        int i = ch.a, j = ch.b;
        Rational scale = weights[i] / weights[j];  // h'_j rises by scale * t
        limit = 1 - h[i];
        tighten((1 - hp[j]) / scale);
        if (i != j) {
          if (!cheap_first[i]) tighten(hp[i] - h[i]);
          if (cheap_first[j]) tighten((h[j] - hp[j]) / scale);
        }
        rate = cv.c[i] + cv.cprime[j] * scale;
        break;
      }
      case Joint: {
        int i = ch.d;
        limit = std::min(Rational(1 - h[i]), Rational(1 - hp[i]));
        rate = cv.c[i] + cv.cprime[i];
        break;
      }
      default:
        break;
    }
    if (sgn(rate) > 0) {
      if (sgn(left) == 0) {
        last = ch;
        break;
      }
      tighten(left / rate);
    }
    if (sgn(limit) <= 0) throw BlottoError("fractional response made no progress");
    switch (move) {
      case RaiseH:
        h[ch.a] += limit;
        lead += limit * weights[ch.a];
        break;
      case RaiseHp:
        hp[ch.b] += limit;
        lead -= limit * weights[ch.b];
        break;
      case Pair:
        h[ch.a] += limit;
        hp[ch.b] += limit * weights[ch.a] / weights[ch.b];
        break;
      case Joint:
        h[ch.d] += limit;
        hp[ch.d] += limit;
        break;
      default:
        break;
    }
    left -= rate * limit;
    last = ch;
    if (++out.iterations > guard) throw BlottoError("fractional response did not terminate");
  }

  Rational uh = 0, uhp = 0;
  for (int i = 0; i < k; ++i) {
    uh += weights[i] * h[i];
    uhp += weights[i] * hp[i];
  }
  out.value = std::min(uh, uhp);

  Signature& sig = out.signature;
  sig.a = last.a;
  sig.b = last.b;
  sig.cidx = last.d;
  const int slots[3] = {sig.a, sig.b, sig.cidx};
  for (int s = 0; s < 3; ++s) {
    sig.x_abc[s] = slots[s] == kNoBattlefield ? 0 : x[slots[s]];
    sig.xprime_abc[s] = slots[s] == kNoBattlefield ? 0 : xp[slots[s]];
  }
  std::vector<int> cells = sig.battlefields();
  Troops outside = 0;
  sig.udot1 = 0;
  sig.udot2 = 0;
  for (int i = 0; i < k; ++i) {
    bool full = h[i] == 1, fullp = hp[i] == 1;
    if (std::binary_search(cells.begin(), cells.end(), i)) {
      if (full) sig.udot1 += weights[i];
      if (fullp) sig.udot2 += weights[i];
    } else {
      outside += (full ? cv.c[i] : 0) + (fullp ? cv.cprime[i] : 0);
    }
  }
  sig.mu = m - outside;
  return out;
}

FractionalResponse best_fractional_response(const Allocation& x, const Allocation& xp,
                                            const GameInstance& inst) {
  validate_allocation(x, inst.n(), inst.k());
  validate_allocation(xp, inst.n(), inst.k());
  return fractional_trace(x, xp, rational_weights(inst), inst.m()).response;
}

GreedyResponse greedy_opponent_response(const Allocation& x, const Allocation& xp,
                                        const GameInstance& inst) {
  FractionalResponse r = best_fractional_response(x, xp, inst);
  for (auto& v : r.h) v = v == 1 ? 1 : 0;
  for (auto& v : r.hprime) v = v == 1 ? 1 : 0;
  GreedyResponse out;
  out.y = strategy_from_h(x, xp, r, inst.m());
  out.value = std::min(payoffs(x, out.y, inst).player2, payoffs(xp, out.y, inst).player2);
  return out;
}

Signature compute_signature(const Allocation& x, const Allocation& xp, const GameInstance& inst) {
  validate_allocation(x, inst.n(), inst.k());
  validate_allocation(xp, inst.n(), inst.k());
  return fractional_trace(x, xp, rational_weights(inst), inst.m()).signature;
}

namespace {

// v_i below the threshold of battlefield t, with ties to the smaller index.
// A missing threshold battlefield acts as +infinity.
bool below(const Rational& v, int i, const Rational& threshold, int t) {
  if (t == kNoBattlefield) return true;
  return v < threshold || (v == threshold && i < t);
}

}  // namespace

std::pair<int, int> partial_response(int i, Troops xi, Troops xpi, const Rational& wi,
                                     const Signature& sig, const std::vector<Rational>& weights) {
  if (i == sig.a || i == sig.b || i == sig.cidx)
    throw InvalidInput("partial_response on a signature battlefield");
  auto ratios = [&](Troops xv, Troops xpv, const Rational& w) {
    CostVectors cv = cost_vectors({xv}, {xpv});
    return std::pair<Rational, Rational>{Rational(static_cast<long>(cv.c[0])) / w,
                                         Rational(static_cast<long>(cv.cprime[0])) / w};
  };
  auto [ri, rpi] = ratios(xi, xpi, wi);
  Rational ra, rpb, rc;
  if (sig.a != kNoBattlefield) ra = ratios(sig.x_abc[0], sig.xprime_abc[0], weights[sig.a]).first;
  if (sig.b != kNoBattlefield) rpb = ratios(sig.x_abc[1], sig.xprime_abc[1], weights[sig.b]).second;
  if (sig.cidx != kNoBattlefield) {
    auto [c1, c2] = ratios(sig.x_abc[2], sig.xprime_abc[2], weights[sig.cidx]);
    rc = c1 + c2;
  }
  bool h_cheap = below(ri, i, ra, sig.a);
  bool hp_cheap = below(rpi, i, rpb, sig.b);
  bool joint = below(ri + rpi, i, rc, sig.cidx);
  if (xi <= xpi) {
    if (h_cheap) return {1, hp_cheap ? 1 : 0};
  } else {
    if (hp_cheap) return {h_cheap ? 1 : 0, 1};
  }
  if (joint) return {1, 1};
  return {0, 0};
}

Signature make_signature(const SignatureHead& head, Troops mu, Rational udot1, Rational udot2) {
  Signature sig;
  sig.a = head.a;
  sig.b = head.b;
  sig.cidx = head.cidx;
  const int slots[3] = {head.a, head.b, head.cidx};
  for (int s = 0; s < 3; ++s) {
    if (slots[s] == kNoBattlefield) continue;
    auto pos = std::find(head.cells.begin(), head.cells.end(), slots[s]) - head.cells.begin();
    sig.x_abc[s] = head.x_cells[static_cast<std::size_t>(pos)];
    sig.xprime_abc[s] = head.xprime_cells[static_cast<std::size_t>(pos)];
  }
  sig.mu = mu;
  sig.udot1 = std::move(udot1);
  sig.udot2 = std::move(udot2);
  return sig;
}

std::vector<std::pair<Rational, Rational>> candidate_utilities(
    const SignatureHead& head, const std::vector<Rational>& weights) {
  std::set<std::pair<Rational, Rational>> acc{{Rational(0), Rational(0)}};
  for (std::size_t j = 0; j < head.cells.size(); ++j) {
    const Rational& w = weights[static_cast<std::size_t>(head.cells[j])];
    bool cheap_first = head.x_cells[j] <= head.xprime_cells[j];
    std::set<std::pair<Rational, Rational>> next;
    for (const auto& [u1, u2] : acc) {
      next.insert({u1, u2});
      next.insert({u1 + w, u2 + w});
      if (cheap_first) next.insert({u1 + w, u2});
      else next.insert({u1, u2 + w});
    }
    acc.swap(next);
  }
  return {acc.begin(), acc.end()};
}

void for_each_signature_head(int k, Troops n,
                             const std::function<void(const SignatureHead&)>& visit) {
  SignatureHead head;
  std::function<void(std::vector<Troops>&, std::size_t, Troops, const std::function<void()>&)> fill =
      [&](std::vector<Troops>& vals, std::size_t j, Troops left, const std::function<void()>& done) {
        if (j == vals.size()) {
          done();
          return;
        }
        for (Troops v = 0; v <= left; ++v) {
          vals[j] = v;
          fill(vals, j + 1, left - v, done);
        }
      };
  for (int a = kNoBattlefield; a < k; ++a)
    for (int b = kNoBattlefield; b < k; ++b)
      for (int c = kNoBattlefield; c < k; ++c) {
        head.a = a;
        head.b = b;
        head.cidx = c;
        head.cells.clear();
        for (int v : {a, b, c})
          if (v != kNoBattlefield) head.cells.push_back(v);
        std::sort(head.cells.begin(), head.cells.end());
        head.cells.erase(std::unique(head.cells.begin(), head.cells.end()), head.cells.end());
        head.x_cells.assign(head.cells.size(), 0);
        head.xprime_cells.assign(head.cells.size(), 0);
        fill(head.x_cells, 0, n, [&] {
          fill(head.xprime_cells, 0, n, [&] { visit(head); });
        });
      }
}

void enumerate_signatures(const GameInstance& inst,
                          const std::function<bool(const Signature&)>& visit) {
  std::vector<Rational> weights = rational_weights(inst);
  struct Stop {};
  try {
    for_each_signature_head(inst.k(), inst.n(), [&](const SignatureHead& head) {
      auto utils = candidate_utilities(head, weights);
      for (Troops mu = 0; mu <= inst.m(); ++mu)
        for (const auto& [u1, u2] : utils)
          if (!visit(make_signature(head, mu, u1, u2))) throw Stop{};
    });
  } catch (Stop&) {
  }
}

std::uint64_t count_signatures(const GameInstance& inst) {
  std::vector<Rational> weights = rational_weights(inst);
  std::uint64_t total = 0;
  for_each_signature_head(inst.k(), inst.n(), [&](const SignatureHead& head) {
    total += static_cast<std::uint64_t>(inst.m() + 1) * candidate_utilities(head, weights).size();
  });
  return total;
}

}  // namespace blotto
