#include "ntiu/kernels.hpp"

#include <cstdlib>
#include <cstring>
#include <stdexcept>
#include <string>

namespace ntiu::kern {
namespace {

const Backend* g_active = nullptr;

const Backend* pick_default() {
  if (const char* env = std::getenv("NTIU_KERNELS")) {
    if (std::strcmp(env, "scalar") == 0) return &scalar_backend();
    if (std::strcmp(env, "avx2") == 0 && avx2_available()) return &avx2_backend();
    // Unknown or unavailable request: fall through to auto-detection.
  }
  return avx2_available() ? &avx2_backend() : &scalar_backend();
}

}  // namespace

bool avx2_available() {
#if defined(NTIU_HAVE_AVX2)
  return __builtin_cpu_supports("avx2");
#else
  return false;
#endif
}

const Backend& active() {
  if (!g_active) g_active = pick_default();
  return *g_active;
}

void set_active(const char* name) {
  if (std::strcmp(name, "scalar") == 0) {
    g_active = &scalar_backend();
    return;
  }
  if (std::strcmp(name, "avx2") == 0) {
    if (!avx2_available())
      throw std::invalid_argument("avx2 kernels not available on this host");
    g_active = &avx2_backend();
    return;
  }
  throw std::invalid_argument(std::string("unknown kernel backend: ") + name);
}

void reset_active() { g_active = pick_default(); }

}  // namespace ntiu::kern
