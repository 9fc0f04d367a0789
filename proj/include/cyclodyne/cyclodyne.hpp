#pragma once

#include "cyclodyne/adic.hpp"
#include "cyclodyne/bigint.hpp"
#include "cyclodyne/cyclotomy.hpp"
#include "cyclodyne/errors.hpp"
#include "cyclodyne/ntcore.hpp"
#include "cyclodyne/sequences.hpp"
#include "cyclodyne/verify.hpp"
