#include "elastica/fft.hpp"

#include <fftw3.h>

#include <map>
#include <mutex>
#include <utility>
#include <vector>

namespace elastica::fft {
namespace {

std::mutex plan_mutex;

// Plans are created once per (size, sign) with FFTW_UNALIGNED so they can be
// re-executed on any caller-provided buffers via fftw_execute_dft.
fftw_plan get_plan(int n, int sign) {
  static std::map<std::pair<int, int>, fftw_plan> cache;
  std::lock_guard<std::mutex> lock(plan_mutex);
  auto key = std::make_pair(n, sign);
  auto it = cache.find(key);
  if (it != cache.end()) return it->second;
  std::vector<std::complex<double>> a(n), b(n);
  fftw_plan p = fftw_plan_dft_1d(n, reinterpret_cast<fftw_complex*>(a.data()),
                                 reinterpret_cast<fftw_complex*>(b.data()), sign,
                                 FFTW_ESTIMATE | FFTW_UNALIGNED);
  cache.emplace(key, p);
  return p;
}

void run(const std::complex<double>* in, std::complex<double>* out, int n, int sign) {
  fftw_plan p = get_plan(n, sign);
  // The cached plan is out-of-place; give aliased calls a scratch input copy.
  if (in == out) {
    std::vector<std::complex<double>> tmp(in, in + n);
    fftw_execute_dft(p, reinterpret_cast<fftw_complex*>(tmp.data()),
                     reinterpret_cast<fftw_complex*>(out));
    return;
  }
  fftw_execute_dft(p,
                   reinterpret_cast<fftw_complex*>(const_cast<std::complex<double>*>(in)),
                   reinterpret_cast<fftw_complex*>(out));
}

}  // namespace

void forward(const std::complex<double>* in, std::complex<double>* out, int n) {
  run(in, out, n, FFTW_FORWARD);
}

void backward(const std::complex<double>* in, std::complex<double>* out, int n) {
  run(in, out, n, FFTW_BACKWARD);
}

}  // namespace elastica::fft
