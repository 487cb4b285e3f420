#ifndef BICONN_BICONN_HPP
#define BICONN_BICONN_HPP

#include "bicon.hpp"
#include "errors.hpp"
#include "graph.hpp"
#include "io.hpp"
#include "matrix.hpp"
#include "random.hpp"
#include "spectral.hpp"
#include "verify.hpp"

#endif
