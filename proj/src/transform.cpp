#include "rotres/transform.hpp"

#include <fftw3.h>

#include <map>
#include <memory>
#include <mutex>
#include <tuple>

namespace rotres {

namespace {

struct FftwFree {
  void operator()(fftw_complex* p) const { fftw_free(p); }
};
using Buffer = std::unique_ptr<fftw_complex[], FftwFree>;

Buffer make_buffer(std::size_t n) {
  Buffer b(fftw_alloc_complex(n));
  if (!b) throw std::bad_alloc();
  for (std::size_t i = 0; i < n; ++i) b[i][0] = b[i][1] = 0.0;
  return b;
}

cplx* as_cplx(fftw_complex* p) { return reinterpret_cast<cplx*>(p); }

/// In-place plans, created once per (rank, M, sign) under a lock.
fftw_plan plan_for(int rank, int M, int sign) {
  static std::mutex mu;
  static std::map<std::tuple<int, int, int>, fftw_plan> cache;
  std::lock_guard lock(mu);
  const auto key = std::make_tuple(rank, M, sign);
  if (auto it = cache.find(key); it != cache.end()) return it->second;
  std::size_t n = 1;
  for (int r = 0; r < rank; ++r) n *= static_cast<std::size_t>(M);
  auto buf = make_buffer(n);
  const int dims[3] = {M, M, M};
  fftw_plan p = fftw_plan_dft(rank, dims, buf.get(), buf.get(), sign, FFTW_ESTIMATE);
  if (!p) throw std::runtime_error("FFTW planning failed");
  cache.emplace(key, p);
  return p;
}

void execute(int rank, int M, int sign, fftw_complex* data) { fftw_execute_dft(plan_for(rank, M, sign), data, data); }

inline std::size_t wrap(std::int64_t n, int M) { return static_cast<std::size_t>(n < 0 ? n + M : n); }

class Grid3 {
 public:
  Grid3(int trunc, int M) : trunc_(trunc), M_(M), size_(static_cast<std::size_t>(M) * M * M) {}
  std::size_t size() const { return size_; }

  template <class Coef>
  void scatter(Coef&& coef, fftw_complex* out) const {
    for (std::size_t i = 0; i < size_; ++i) out[i][0] = out[i][1] = 0.0;
    const int s = 2 * trunc_ + 1;
    std::size_t idx = 0;
    for (int a = 0; a < s; ++a) {
      for (int b = 0; b < s; ++b) {
        for (int c = 0; c < s; ++c, ++idx) {
          const FreqVec n{a - trunc_, b - trunc_, c - trunc_};
          as_cplx(out)[pos(n)] = coef(idx, n);
        }
      }
    }
  }

  std::size_t pos(const FreqVec& n) const {
    return (wrap(n.n1, M_) * M_ + wrap(n.n2, M_)) * M_ + wrap(n.n3, M_);
  }

 private:
  int trunc_, M_;
  std::size_t size_;
};

}  // namespace

int padded_size(int trunc) {
  int M = 3 * trunc + 1;
  for (;; ++M) {
    int r = M;
    for (int p : {2, 3, 5}) {
      while (r % p == 0) r /= p;
    }
    if (r == 1) return M;
  }
}

SpectralField advective_product(const SpectralField& a, const SpectralField& b) {
  require_same_trunc(a, b);
  const int N = a.trunc();
  const int M = padded_size(N);
  const Grid3 grid(N, M);
  const std::size_t sz = grid.size();

  std::vector<Buffer> A;
  for (int j = 0; j < 3; ++j) {
    A.push_back(make_buffer(sz));
    grid.scatter([&](std::size_t idx, const FreqVec&) { return a[idx][j]; }, A[j].get());
    execute(3, M, FFTW_BACKWARD, A[j].get());
  }
  std::vector<Buffer> P;
  for (int l = 0; l < 3; ++l) P.push_back(make_buffer(sz));
  auto D = make_buffer(sz);
  const cplx I(0.0, 1.0);
  for (int l = 0; l < 3; ++l) {
    cplx* p = as_cplx(P[l].get());
    for (int j = 0; j < 3; ++j) {
      grid.scatter([&](std::size_t idx, const FreqVec& n) { return I * static_cast<double>(n[j]) * b[idx][l]; },
                   D.get());
      execute(3, M, FFTW_BACKWARD, D.get());
      const cplx* d = as_cplx(D.get());
      const cplx* aj = as_cplx(A[j].get());
      for (std::size_t i = 0; i < sz; ++i) p[i] += aj[i] * d[i];
    }
    execute(3, M, FFTW_FORWARD, P[l].get());
  }

  SpectralField out(N);
  const double scale = 1.0 / static_cast<double>(sz);
  for (std::size_t i = 0; i < out.size(); ++i) {
    const std::size_t g = grid.pos(out.mode(i));
    for (int l = 0; l < 3; ++l) out[i][l] = as_cplx(P[l].get())[g] * scale;
  }
  return out;
}

PlaneField advect_scalar_2d(const PlaneField& u1, const PlaneField& u2, const PlaneField& s) {
  if (u1.trunc() != s.trunc() || u2.trunc() != s.trunc()) throw InvalidInput("plane field truncation mismatch");
  const int N = s.trunc();
  const int M = padded_size(N);
  const std::size_t sz = static_cast<std::size_t>(M) * M;
  const auto pos = [&](std::int64_t n1, std::int64_t n2) { return wrap(n1, M) * M + wrap(n2, M); };
  const auto load = [&](auto&& coef, fftw_complex* out) {
    for (std::size_t i = 0; i < sz; ++i) out[i][0] = out[i][1] = 0.0;
    for (std::size_t i = 0; i < s.size(); ++i) {
      const auto [n1, n2] = s.mode(i);
      as_cplx(out)[pos(n1, n2)] = coef(i, n1, n2);
    }
    execute(2, M, FFTW_BACKWARD, out);
  };
  const cplx I(0.0, 1.0);
  auto U1 = make_buffer(sz), U2 = make_buffer(sz), G = make_buffer(sz), R = make_buffer(sz);
  load([&](std::size_t i, std::int64_t, std::int64_t) { return u1[i]; }, U1.get());
  load([&](std::size_t i, std::int64_t, std::int64_t) { return u2[i]; }, U2.get());
  load([&](std::size_t i, std::int64_t n1, std::int64_t) { return I * static_cast<double>(n1) * s[i]; }, G.get());
  cplx* r = as_cplx(R.get());
  for (std::size_t i = 0; i < sz; ++i) r[i] = as_cplx(U1.get())[i] * as_cplx(G.get())[i];
  load([&](std::size_t i, std::int64_t, std::int64_t n2) { return I * static_cast<double>(n2) * s[i]; }, G.get());
  for (std::size_t i = 0; i < sz; ++i) r[i] += as_cplx(U2.get())[i] * as_cplx(G.get())[i];
  execute(2, M, FFTW_FORWARD, R.get());

  PlaneField out(N);
  const double scale = 1.0 / static_cast<double>(sz);
  for (std::size_t i = 0; i < out.size(); ++i) {
    const auto [n1, n2] = out.mode(i);
    out[i] = r[pos(n1, n2)] * scale;
  }
  return out;
}

std::vector<cplx> to_grid(const SpectralField& f, int component, int M) {
  if (M < 2 * f.trunc() + 1) throw InvalidInput("grid too coarse for the truncation");
  const Grid3 grid(f.trunc(), M);
  auto buf = make_buffer(grid.size());
  grid.scatter([&](std::size_t idx, const FreqVec&) { return f[idx][component]; }, buf.get());
  execute(3, M, FFTW_BACKWARD, buf.get());
  return {as_cplx(buf.get()), as_cplx(buf.get()) + grid.size()};
}

}  // namespace rotres
