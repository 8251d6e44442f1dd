#pragma once

#include "submig/analytic.hpp"
#include "submig/bessel.hpp"
#include "submig/errors.hpp"
#include "submig/forward.hpp"
#include "submig/geometry.hpp"
#include "submig/image_map.hpp"
#include "submig/imaging.hpp"
#include "submig/io.hpp"
#include "submig/presets.hpp"
#include "submig/scene.hpp"
#include "submig/scene_file.hpp"
#include "submig/spectral.hpp"
