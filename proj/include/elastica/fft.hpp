#pragma once

#include <complex>

// Thin thread-safe layer over FFTW's double-precision complex 1D transforms.
// Plans are cached per (size, direction); execution may run concurrently.
namespace elastica::fft {

// out[k] = sum_j in[j] * exp(-2*pi*i*j*k/n)   (unnormalized)
void forward(const std::complex<double>* in, std::complex<double>* out, int n);

// out[j] = sum_k in[k] * exp(+2*pi*i*j*k/n)   (unnormalized)
void backward(const std::complex<double>* in, std::complex<double>* out, int n);

}  // namespace elastica::fft
