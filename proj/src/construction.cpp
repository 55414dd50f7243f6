#include "maxavg/construction.hpp"

#include <algorithm>
#include <cmath>
#include <stdexcept>

namespace maxavg {

Rat RatCyclicMeasure::value_at_flat(std::int64_t flat) const {
  auto it = std::lower_bound(atoms.begin(), atoms.end(), flat,
                             [](const auto& a, std::int64_t x) { return a.first < x; });
  Rat v = background;
  if (it != atoms.end() && it->first == flat) v += it->second;
  return v;
}

Rat RatCyclicMeasure::value_at(std::span<const std::int64_t> coords) const {
  const std::int64_t ip = static_cast<std::int64_t>(p);
  std::int64_t flat = 0;
  for (int ax = 0; ax < m; ++ax) {
    std::int64_t c = coords[static_cast<std::size_t>(ax)] % ip;
    if (c < 0) c += ip;
    flat = flat * ip + c;
  }
  return value_at_flat(flat);
}

CyclicMeasureTriple make_sigma_triple(std::uint64_t p, MeasureKind kind, int m_or_d) {
  if (p < 3 || p % 2 == 0 || !is_prime(p))
    throw std::invalid_argument("make_sigma_triple: p must be an odd prime");
  if (m_or_d < 1) throw std::invalid_argument("make_sigma_triple: dimension parameter must be >= 1");

  CyclicMeasureTriple t;
  t.kind = kind;
  t.p = p;
  t.param = m_or_d;
  const std::int64_t ip = static_cast<std::int64_t>(p);

  int m;             // ambient dimension of Z_p^m
  std::int64_t natoms;
  Rat atom_mass;
  if (kind == MeasureKind::PowerDiagonal) {
    if (static_cast<std::uint64_t>(m_or_d) >= p)
      throw std::invalid_argument("make_sigma_triple: power-diagonal requires p > m");
    m = m_or_d;
    natoms = ip;
    atom_mass = Rat(1, ip);
  } else {
    m = m_or_d + 1;
    natoms = checked_ipow(ip, m_or_d);
    atom_mass = Rat(1, natoms);
  }

  std::int64_t volume = cyclic_volume(ip, m);
  Rat uniform = Rat(1, volume);

  t.sigma = CyclicSignal(ip, m);
  t.sigma0 = CyclicSignal(ip, m);
  t.sigma_star = CyclicSignal(ip, m);

  std::vector<std::int64_t> flats;
  flats.reserve(static_cast<std::size_t>(natoms));
  std::vector<std::int64_t> coords(static_cast<std::size_t>(m));
  if (kind == MeasureKind::PowerDiagonal) {
    for (std::int64_t k = 0; k < ip; ++k) {
      for (int r = 1; r <= m; ++r)
        coords[static_cast<std::size_t>(r - 1)] = mod_residue_power(k, static_cast<unsigned>(r), p);
      flats.push_back(t.sigma.flat_index(coords));
    }
  } else {
    const int d = m_or_d;
    std::vector<std::int64_t> j(static_cast<std::size_t>(d), 0);
    for (std::int64_t count = 0; count < natoms; ++count) {
      std::int64_t norm2 = 0;
      for (int r = 0; r < d; ++r) {
        coords[static_cast<std::size_t>(r)] = j[static_cast<std::size_t>(r)];
        norm2 += j[static_cast<std::size_t>(r)] * j[static_cast<std::size_t>(r)];
      }
      coords[static_cast<std::size_t>(d)] = norm2 % ip;
      flats.push_back(t.sigma.flat_index(coords));
      for (int ax = 0; ax < d; ++ax) {
        if (++j[static_cast<std::size_t>(ax)] < ip) break;
        j[static_cast<std::size_t>(ax)] = 0;
      }
    }
  }
  std::sort(flats.begin(), flats.end());
  if (std::adjacent_find(flats.begin(), flats.end()) != flats.end())
    throw std::logic_error("make_sigma_triple: atom collision");

  const double atom_d = to_double(atom_mass);
  const double uniform_d = to_double(uniform);
  for (std::int64_t f : flats) t.sigma.values[static_cast<std::size_t>(f)] += atom_d;
  for (auto& v : t.sigma0.values) v = uniform_d;
  t.sigma_star = t.sigma;
  for (auto& v : t.sigma_star.values) v -= uniform_d;

  t.sigma_exact.p = p;
  t.sigma_exact.m = m;
  t.sigma_exact.background = Rat(0);
  for (std::int64_t f : flats) t.sigma_exact.atoms.emplace_back(f, atom_mass);
  t.sigma0_exact.p = p;
  t.sigma0_exact.m = m;
  t.sigma0_exact.background = uniform;
  t.sigma_star_exact.p = p;
  t.sigma_star_exact.m = m;
  t.sigma_star_exact.background = -uniform;
  for (std::int64_t f : flats) t.sigma_star_exact.atoms.emplace_back(f, atom_mass);
  return t;
}

CutoffProfile make_cutoff(std::uint64_t p) {
  if (p < 5 || p % 2 == 0) throw std::invalid_argument("make_cutoff: p must be odd and >= 5");
  const std::int64_t ip = static_cast<std::int64_t>(p);
  const std::int64_t h = (ip - 1) / 2;
  CutoffProfile c;
  c.p = p;
  c.values.assign(static_cast<std::size_t>(3 * ip), Rat(0));
  for (std::int64_t i = -ip; i < 2 * ip; ++i) {
    Rat v(0);
    if (i >= 0 && i <= ip - 1) {
      v = Rat(1);
    } else if (i >= -ip && i <= -ip + h) {
      v = Rat(0);
    } else if (i >= ip - 1 + h) {
      v = Rat(0);
    } else if (i > -ip + h && i < 0) {
      v = Rat(2 * i + ip + 1, ip + 1);  // affine from 0 at -p+h to 1 at 0
    } else {
      v = Rat(3 * ip - 3 - 2 * i, ip - 1);  // affine from 1 at p-1 to 0 at p-1+h
    }
    c.values[static_cast<std::size_t>(i + ip)] = v;
  }
  return c;
}

Rat CutoffProfile::at(std::int64_t i) const {
  const std::int64_t ip = static_cast<std::int64_t>(p);
  if (i < -ip || i >= 2 * ip) throw std::out_of_range("CutoffProfile::at");
  return values[static_cast<std::size_t>(i + ip)];
}

Rat CutoffProfile::total() const {
  Rat s(0);
  for (const Rat& v : values) s += v;
  return s;
}

CyclicSignal periodize(const CyclicSignal& w) {
  const std::int64_t p = w.q;
  CyclicSignal kappa(3 * p, w.m, -p);
  for_each_coord(3 * p, w.m, -p, [&](std::int64_t flat, std::span<const std::int64_t> k) {
    kappa.values[static_cast<std::size_t>(flat)] = w.at(k);
  });
  return kappa;
}

CyclicSignal apply_cutoff(const CyclicSignal& kappa, const CutoffProfile& phi) {
  const std::int64_t p = static_cast<std::int64_t>(phi.p);
  if (kappa.q != 3 * p || kappa.index_origin != -p)
    throw std::invalid_argument("apply_cutoff: signal must live on Z_{3p} = [-p, 2p-1]");
  CyclicSignal rho = kappa;
  for_each_coord(kappa.q, kappa.m, -p, [&](std::int64_t flat, std::span<const std::int64_t> k) {
    Rat prod(1);
    for (int ax = 0; ax < kappa.m && prod != Rat(0); ++ax)
      prod *= phi.at(k[static_cast<std::size_t>(ax)]);
    rho.values[static_cast<std::size_t>(flat)] *= to_double(prod);
  });
  return rho;
}

namespace {

// F(k_1,...,k_m) = sum_j p^{j-1} k_j.
std::int64_t push_index(std::span<const std::int64_t> k, std::int64_t p) {
  std::int64_t n = 0;
  std::int64_t power = 1;
  for (std::size_t j = 0; j < k.size(); ++j) {
    n += power * k[j];
    power *= p;
  }
  return n;
}

}  // namespace

IntSignal pushforward(const CyclicSignal& rho, std::uint64_t p) {
  const std::int64_t ip = static_cast<std::int64_t>(p);
  if (rho.q != 3 * ip || rho.index_origin != -ip)
    throw std::invalid_argument("pushforward: signal must live on Z_{3p} = [-p, 2p-1]");
  std::int64_t geom = 0;  // 1 + p + ... + p^{m-1}
  std::int64_t power = 1;
  for (int j = 0; j < rho.m; ++j) {
    geom += power;
    power *= ip;
  }
  const std::int64_t lo = -ip * geom;
  const std::int64_t hi = (2 * ip - 1) * geom;
  IntSignal out;
  out.offset = lo;
  out.values.assign(static_cast<std::size_t>(hi - lo + 1), 0.0);
  for_each_coord(rho.q, rho.m, -ip, [&](std::int64_t flat, std::span<const std::int64_t> k) {
    const cplx v = rho.values[static_cast<std::size_t>(flat)];
    if (v == cplx(0.0, 0.0)) return;
    out.values[static_cast<std::size_t>(push_index(k, ip) - lo)] += v.real();
  });
  out.trim();
  return out;
}

IntSignal gamma_transfer(const CyclicSignal& w, const CutoffProfile& phi) {
  if (w.q != static_cast<std::int64_t>(phi.p))
    throw std::invalid_argument("gamma_transfer: modulus mismatch with cutoff");
  return pushforward(apply_cutoff(periodize(w), phi), phi.p);
}

RatSignal gamma_transfer_exact(const RatCyclicMeasure& w, const CutoffProfile& phi) {
  if (w.p != phi.p) throw std::invalid_argument("gamma_transfer_exact: modulus mismatch");
  const std::int64_t ip = static_cast<std::int64_t>(w.p);
  cyclic_volume(3 * ip, w.m);  // capacity guard
  std::int64_t geom = 0;
  std::int64_t power = 1;
  for (int j = 0; j < w.m; ++j) {
    geom += power;
    power *= ip;
  }
  const std::int64_t lo = -ip * geom;
  const std::int64_t hi = (2 * ip - 1) * geom;
  RatSignal out;
  out.offset = lo;
  out.values.assign(static_cast<std::size_t>(hi - lo + 1), Rat(0));
  for_each_coord(3 * ip, w.m, -ip, [&](std::int64_t, std::span<const std::int64_t> k) {
    Rat prod(1);
    for (int ax = 0; ax < w.m; ++ax) {
      prod *= phi.at(k[static_cast<std::size_t>(ax)]);
      if (prod == Rat(0)) return;
    }
    Rat v = w.value_at(k);
    if (v == Rat(0)) return;
    out.values[static_cast<std::size_t>(push_index(k, ip) - lo)] += prod * v;
  });
  out.trim();
  return out;
}

SequenceBlock block_elements(std::uint64_t p, int m, std::int64_t a) {
  // p > m is only needed on the Fourier side (Weil); the element set itself
  // is well defined (and injective via the first base-p digit) for any m.
  if (p < 3 || !is_prime(p)) throw std::invalid_argument("block_elements: p must be an odd prime");
  if (m < 1) throw std::invalid_argument("block_elements: m must be >= 1");
  if (a < 0) throw std::invalid_argument("block_elements: offset must be nonnegative");
  const std::int64_t ip = static_cast<std::int64_t>(p);
  SequenceBlock b;
  b.p = p;
  b.a = a;
  b.elements.reserve(static_cast<std::size_t>(ip));
  for (std::int64_t j = 0; j < ip; ++j) {
    std::int64_t g = 0;
    std::int64_t power = 1;
    for (int r = 1; r <= m; ++r) {
      g += power * mod_residue_power(j, static_cast<unsigned>(r), p);
      power *= ip;
    }
    b.elements.push_back(a + g);
  }
  std::sort(b.elements.begin(), b.elements.end());
  // injectivity of j -> g(j): first base-p digits [j]_p are all distinct
  if (std::adjacent_find(b.elements.begin(), b.elements.end()) != b.elements.end())
    throw std::logic_error("block_elements: element collision");
  return b;
}

SequenceBlock variant_block_elements(std::uint64_t p, int d, std::int64_t a) {
  if (p < 3 || !is_prime(p)) throw std::invalid_argument("variant_block_elements: p must be an odd prime");
  if (d < 1) throw std::invalid_argument("variant_block_elements: d must be >= 1");
  const std::int64_t ip = static_cast<std::int64_t>(p);
  const std::int64_t count = checked_ipow(ip, d);
  SequenceBlock b;
  b.p = p;
  b.a = a;
  b.elements.reserve(static_cast<std::size_t>(count));
  std::vector<std::int64_t> j(static_cast<std::size_t>(d), 0);
  const std::int64_t pd = checked_ipow(ip, d);
  for (std::int64_t c = 0; c < count; ++c) {
    std::int64_t n = 0;
    std::int64_t power = 1;
    std::int64_t norm2 = 0;
    for (int r = 0; r < d; ++r) {
      n += power * j[static_cast<std::size_t>(r)];
      power *= ip;
      norm2 += j[static_cast<std::size_t>(r)] * j[static_cast<std::size_t>(r)];
    }
    n += pd * (norm2 % ip);
    b.elements.push_back(a + n);
    for (int ax = 0; ax < d; ++ax) {
      if (++j[static_cast<std::size_t>(ax)] < ip) break;
      j[static_cast<std::size_t>(ax)] = 0;
    }
  }
  std::sort(b.elements.begin(), b.elements.end());
  if (std::adjacent_find(b.elements.begin(), b.elements.end()) != b.elements.end())
    throw std::logic_error("variant_block_elements: element collision");
  return b;
}

IntSignal block_probability_measure(const SequenceBlock& block) {
  std::vector<std::pair<std::int64_t, double>> atoms;
  atoms.reserve(block.elements.size());
  const double mass = 1.0 / static_cast<double>(block.elements.size());
  for (std::int64_t n : block.elements) atoms.emplace_back(n, mass);
  return IntSignal::from_atoms(atoms);
}

BlockTriple make_block_triple(std::uint64_t p, int m_or_d, std::int64_t a, MeasureKind kind) {
  CyclicMeasureTriple t = make_sigma_triple(p, kind, m_or_d);
  CutoffProfile phi = make_cutoff(p);
  BlockTriple b;
  b.kind = kind;
  b.p = p;
  b.param = m_or_d;
  b.a = a;
  b.mu_exact = rat_translate(gamma_transfer_exact(t.sigma_exact, phi), a);
  b.nu_exact = rat_translate(gamma_transfer_exact(t.sigma0_exact, phi), a);
  b.lambda_exact = rat_subtract(b.mu_exact, b.nu_exact);
  b.mu_tilde = b.mu_exact.to_int_signal();
  b.nu = b.nu_exact.to_int_signal();
  b.lambda = subtract(b.mu_tilde, b.nu);  // lambda = mu_tilde - nu, exactly as doubles
  return b;
}

namespace {

// Least-squares slope of log n_nu against log nu.
double loglog_slope(const std::vector<std::int64_t>& merged) {
  double sx = 0, sy = 0, sxx = 0, sxy = 0;
  const double n = static_cast<double>(merged.size());
  for (std::size_t i = 0; i < merged.size(); ++i) {
    double x = std::log(static_cast<double>(i + 1));
    double y = std::log(static_cast<double>(merged[i] == 0 ? 1 : merged[i]));
    sx += x;
    sy += y;
    sxx += x * x;
    sxy += x * y;
  }
  double denom = n * sxx - sx * sx;
  return denom == 0.0 ? 0.0 : (n * sxy - sx * sy) / denom;
}

}  // namespace

SparseSequence build_sequence(SequenceKind kind, const PrimeSchedule& schedule,
                              const OffsetSchedule& offsets, int m_or_d,
                              std::vector<int> pattern) {
  SparseSequence s;
  s.kind = kind;
  s.schedule = schedule;
  s.offsets = offsets;

  int exponent_in_force = 0;
  if (kind == SequenceKind::PowerDiagonal) {
    s.m = m_or_d;
    exponent_in_force = m_or_d;
  } else if (kind == SequenceKind::Paraboloid) {
    s.d = m_or_d;
  } else {
    if (pattern.size() != schedule.primes.size())
      throw std::invalid_argument("build_sequence: mixed kind needs one exponent per block");
    for (std::size_t k = 0; k < pattern.size(); ++k) {
      if (pattern[k] != offsets.exponent_at(k))
        throw std::invalid_argument("build_sequence: pattern disagrees with offset schedule");
      exponent_in_force = std::max(exponent_in_force, pattern[k]);
    }
    s.pattern = pattern;
  }
  validate(schedule, exponent_in_force);
  validate(offsets, schedule);

  for (std::size_t k = 0; k < schedule.primes.size(); ++k) {
    SequenceBlock b;
    if (kind == SequenceKind::PowerDiagonal)
      b = block_elements(schedule.primes[k], m_or_d, offsets.offsets[k]);
    else if (kind == SequenceKind::Paraboloid)
      b = variant_block_elements(schedule.primes[k], m_or_d, offsets.offsets[k]);
    else
      b = block_elements(schedule.primes[k], pattern[k], offsets.offsets[k]);
    b.k = static_cast<int>(k + 1);
    s.blocks.push_back(std::move(b));
  }

  for (const SequenceBlock& b : s.blocks)
    s.merged.insert(s.merged.end(), b.elements.begin(), b.elements.end());
  // gap condition (1.5) makes consecutive blocks disjoint; keep the guard
  for (std::size_t i = 0; i + 1 < s.merged.size(); ++i)
    if (s.merged[i] >= s.merged[i + 1]) throw std::logic_error("build_sequence: blocks overlap");

  if (kind == SequenceKind::PowerDiagonal)
    s.growth_exponent = static_cast<double>(m_or_d);
  else if (kind == SequenceKind::Paraboloid)
    s.growth_exponent = static_cast<double>(m_or_d + 1) / static_cast<double>(m_or_d);
  else
    s.growth_exponent = loglog_slope(s.merged);

  double rmin = 0, rmax = 0;
  for (std::size_t i = 0; i < s.merged.size(); ++i) {
    double nu = static_cast<double>(i + 1);
    double r = static_cast<double>(s.merged[i]) / std::pow(nu, s.growth_exponent);
    if (i == 0 || r < rmin) rmin = r;
    if (i == 0 || r > rmax) rmax = r;
  }
  s.growth_ratio = rmin > 0 ? rmax / rmin : 0.0;
  return s;
}

}  // namespace maxavg
