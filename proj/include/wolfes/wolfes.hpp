#pragma once

#include "wolfes/errors.hpp"
#include "wolfes/model.hpp"
#include "wolfes/coords.hpp"
#include "wolfes/tridiagonal.hpp"
#include "wolfes/channels.hpp"
#include "wolfes/lanczos.hpp"
#include "wolfes/hd3d.hpp"
#include "wolfes/report.hpp"
#include "wolfes/verify.hpp"
#include "wolfes/io.hpp"
#include "wolfes/config.hpp"
