#pragma once

#include <paradisc/discrimination.hpp>
#include <paradisc/errors.hpp>
#include <paradisc/identifier.hpp>
#include <paradisc/json_io.hpp>
#include <paradisc/optimizer.hpp>
#include <paradisc/oracle.hpp>
#include <paradisc/rational.hpp>
#include <paradisc/schemes.hpp>
