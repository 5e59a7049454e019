#include "rfprog/parallel.hpp"

#include <algorithm>

namespace rfprog {

namespace {
unsigned g_threads = 0;  // 0 = hardware default
}

void set_thread_count(unsigned n) { g_threads = n; }

unsigned thread_count() {
    if (g_threads > 0) return g_threads;
    const unsigned hw = std::thread::hardware_concurrency();
    return hw > 0 ? hw : 1;
}

}  // namespace rfprog
