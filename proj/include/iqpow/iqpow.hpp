#ifndef IQPOW_IQPOW_HPP
#define IQPOW_IQPOW_HPP

#include "iqpow/common.hpp"
#include "iqpow/curve.hpp"
#include "iqpow/ff_ideal.hpp"
#include "iqpow/fp.hpp"
#include "iqpow/instances.hpp"
#include "iqpow/nf_ideal.hpp"
#include "iqpow/poly.hpp"

#endif /* IQPOW_IQPOW_HPP */
