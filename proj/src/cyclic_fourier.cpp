#include "maxavg/cyclic_fourier.hpp"

#include <cmath>
#include <numbers>
#include <stdexcept>

#include "maxavg/numtheory.hpp"
#include "maxavg/parallel.hpp"

namespace maxavg {

std::vector<cplx> unit_root_table(std::int64_t q, int sign) {
  std::vector<cplx> w(static_cast<std::size_t>(q));
  for (std::int64_t u = 0; u < q; ++u) {
    double angle = sign * 2.0 * std::numbers::pi * static_cast<double>(u) / static_cast<double>(q);
    w[static_cast<std::size_t>(u)] = cplx(std::cos(angle), std::sin(angle));
  }
  return w;
}

namespace {

std::int64_t floor_mod(std::int64_t a, std::int64_t q) {
  std::int64_t r = a % q;
  return r < 0 ? r + q : r;
}

// One 1-D pass along each axis; phases are exact integers mod q throughout.
CyclicSignal transform(const CyclicSignal& f, int sign, bool normalize) {
  const std::int64_t q = f.q;
  const std::int64_t o = f.index_origin;
  std::vector<cplx> roots = unit_root_table(q, sign);

  CyclicSignal out = f;
  std::vector<cplx> line_in(static_cast<std::size_t>(q));
  std::vector<cplx> line_out(static_cast<std::size_t>(q));

  std::int64_t stride = 1;
  for (int ax = f.m - 1; ax >= 0; --ax) {
    const std::int64_t block = stride * q;
    const std::int64_t total = out.size();
    for (std::int64_t base_hi = 0; base_hi < total; base_hi += block) {
      for (std::int64_t lo = 0; lo < stride; ++lo) {
        const std::int64_t base = base_hi + lo;
        for (std::int64_t i = 0; i < q; ++i)
          line_in[static_cast<std::size_t>(i)] = out.values[static_cast<std::size_t>(base + i * stride)];
        for (std::int64_t s = 0; s < q; ++s) {
          cplx acc = 0;
          const std::int64_t sc = s + o;  // true dual coordinate
          for (std::int64_t i = 0; i < q; ++i) {
            std::int64_t u = floor_mod((i + o) * sc, q);
            acc += line_in[static_cast<std::size_t>(i)] * roots[static_cast<std::size_t>(u)];
          }
          line_out[static_cast<std::size_t>(s)] = acc;
        }
        for (std::int64_t s = 0; s < q; ++s)
          out.values[static_cast<std::size_t>(base + s * stride)] = line_out[static_cast<std::size_t>(s)];
      }
    }
    stride = block;
  }

  if (normalize) {
    double scale = 1.0;
    for (int i = 0; i < f.m; ++i) scale /= static_cast<double>(q);
    for (cplx& v : out.values) v *= scale;
  }
  return out;
}

}  // namespace

CyclicSignal dft(const CyclicSignal& f) { return transform(f, -1, false); }

CyclicSignal idft(const CyclicSignal& f) { return transform(f, +1, true); }

CyclicSignal convolve(const CyclicSignal& f, const CyclicSignal& g) {
  if (f.q != g.q || f.m != g.m || f.index_origin != g.index_origin)
    throw std::invalid_argument("convolve: shape mismatch");
  CyclicSignal h(f.q, f.m, f.index_origin);
  const std::int64_t q = f.q;
  const int m = f.m;
  std::vector<std::int64_t> diff(static_cast<std::size_t>(m));
  for_each_coord(q, m, f.index_origin, [&](std::int64_t hx, std::span<const std::int64_t> x) {
    cplx acc = 0;
    for_each_coord(q, m, f.index_origin, [&](std::int64_t gy, std::span<const std::int64_t> y) {
      for (int ax = 0; ax < m; ++ax) diff[static_cast<std::size_t>(ax)] = x[static_cast<std::size_t>(ax)] - y[static_cast<std::size_t>(ax)];
      acc += f.at(diff) * g.values[static_cast<std::size_t>(gy)];
    });
    h.values[static_cast<std::size_t>(hx)] = acc;
  });
  return h;
}

cplx weil_value(std::uint64_t p, int m, std::span<const std::int64_t> xi) {
  if (static_cast<std::uint64_t>(m) >= p)
    throw std::domain_error("weil_value: requires p > m");
  if (static_cast<int>(xi.size()) != m) throw std::invalid_argument("weil_value: xi must have m entries");
  const std::int64_t ip = static_cast<std::int64_t>(p);
  std::vector<cplx> roots = unit_root_table(ip, -1);
  cplx acc = 0;
  for (std::int64_t k = 0; k < ip; ++k) {
    std::int64_t u = 0;
    for (int r = 1; r <= m; ++r) {
      std::int64_t kr = mod_residue_power(k, static_cast<unsigned>(r), p);
      u = floor_mod(u + kr * floor_mod(xi[static_cast<std::size_t>(r - 1)], ip), ip);
    }
    acc += roots[static_cast<std::size_t>(u)];
  }
  return acc / static_cast<double>(p);
}

double weil_sup(std::uint64_t p, int m, int workers) {
  if (static_cast<std::uint64_t>(m) >= p)
    throw std::domain_error("weil_sup: requires p > m");
  const std::int64_t ip = static_cast<std::int64_t>(p);
  std::vector<cplx> roots = unit_root_table(ip, -1);

  // res[r][k] = [k^{r+1}]_p
  std::vector<std::vector<std::int64_t>> res(static_cast<std::size_t>(m));
  for (int r = 0; r < m; ++r) {
    res[static_cast<std::size_t>(r)].resize(static_cast<std::size_t>(ip));
    for (std::int64_t k = 0; k < ip; ++k)
      res[static_cast<std::size_t>(r)][static_cast<std::size_t>(k)] =
          mod_residue_power(k, static_cast<unsigned>(r + 1), p);
  }

  std::int64_t tails = 1;
  for (int r = 1; r < m; ++r) tails *= ip;

  // Partial sums over the leading coordinate are built incrementally:
  // phase(k, x1) = B(k) + k x1 steps by k per x1 increment.
  double sup = parallel_max(0, tails, [&](std::int64_t tail) -> double {
    std::vector<std::int64_t> b(static_cast<std::size_t>(ip), 0);
    std::int64_t t = tail;
    bool tail_zero = true;
    for (int r = m - 1; r >= 1; --r) {
      std::int64_t xr = t % ip;
      t /= ip;
      if (xr != 0) tail_zero = false;
      if (xr == 0) continue;
      const auto& rr = res[static_cast<std::size_t>(r)];
      for (std::int64_t k = 0; k < ip; ++k)
        b[static_cast<std::size_t>(k)] = floor_mod(b[static_cast<std::size_t>(k)] + rr[static_cast<std::size_t>(k)] * xr, ip);
    }
    std::vector<cplx> acc(static_cast<std::size_t>(ip), cplx(0, 0));
    for (std::int64_t k = 0; k < ip; ++k) {
      std::int64_t u = b[static_cast<std::size_t>(k)];
      for (std::int64_t x1 = 0; x1 < ip; ++x1) {
        acc[static_cast<std::size_t>(x1)] += roots[static_cast<std::size_t>(u)];
        u += k;
        if (u >= ip) u -= ip;
      }
    }
    double local = 0.0;
    for (std::int64_t x1 = tail_zero ? 1 : 0; x1 < ip; ++x1)
      local = std::max(local, std::abs(acc[static_cast<std::size_t>(x1)]));
    return local / static_cast<double>(p);
  }, workers);

  return sup;
}

cplx gauss_sum(std::uint64_t p, std::int64_t a, std::int64_t b) {
  if (p < 3 || !is_prime(p)) throw std::invalid_argument("gauss_sum: modulus must be an odd prime");
  const std::int64_t ip = static_cast<std::int64_t>(p);
  const std::int64_t am = floor_mod(a, ip);
  const std::int64_t bm = floor_mod(b, ip);
  std::vector<cplx> roots = unit_root_table(ip, -1);
  cplx acc = 0;
  for (std::int64_t n = 0; n < ip; ++n) {
    std::int64_t u = floor_mod(am * n + bm * floor_mod(n * n, ip), ip);
    acc += roots[static_cast<std::size_t>(u)];
  }
  return acc;
}

cplx paraboloid_value(std::uint64_t p, int d, std::span<const std::int64_t> xi) {
  if (static_cast<int>(xi.size()) != d + 1)
    throw std::invalid_argument("paraboloid_value: xi must have d+1 entries");
  const std::int64_t last = xi[static_cast<std::size_t>(d)];
  cplx prod = 1;
  for (int j = 0; j < d; ++j) prod *= gauss_sum(p, xi[static_cast<std::size_t>(j)], last);
  double scale = 1.0;
  for (int j = 0; j < d; ++j) scale /= static_cast<double>(p);
  return prod * scale;
}

double paraboloid_sup(std::uint64_t p, int d) {
  const std::int64_t ip = static_cast<std::int64_t>(p);
  // Gauss values for every (a, b) pair, then a sweep over the dual group.
  std::vector<cplx> g(static_cast<std::size_t>(ip * ip));
  for (std::int64_t a = 0; a < ip; ++a)
    for (std::int64_t b = 0; b < ip; ++b)
      g[static_cast<std::size_t>(a * ip + b)] = gauss_sum(p, a, b);

  double scale = 1.0;
  for (int j = 0; j < d; ++j) scale /= static_cast<double>(p);

  std::int64_t total = 1;
  for (int j = 0; j <= d; ++j) total *= ip;

  double sup = 0.0;
  std::vector<std::int64_t> xi(static_cast<std::size_t>(d + 1), 0);
  for (std::int64_t flat = 1; flat < total; ++flat) {
    // increment odometer (xi[0] fastest)
    for (int ax = 0;; ++ax) {
      if (++xi[static_cast<std::size_t>(ax)] < ip) break;
      xi[static_cast<std::size_t>(ax)] = 0;
    }
    const std::int64_t b = xi[static_cast<std::size_t>(d)];
    double mag = scale;
    for (int j = 0; j < d && mag != 0.0; ++j)
      mag *= std::abs(g[static_cast<std::size_t>(xi[static_cast<std::size_t>(j)] * ip + b)]);
    sup = std::max(sup, mag);
  }
  return sup;
}

}  // namespace maxavg
