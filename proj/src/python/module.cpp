#include <pybind11/pybind11.h>
PYBIND11_MODULE(_spectral_tori, m) { m.doc() = "placeholder"; }
