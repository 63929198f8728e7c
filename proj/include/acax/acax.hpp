#pragma once

#include "acax/linalg.hpp"
#include "acax/errors.hpp"
#include "acax/elastic_media.hpp"
#include "acax/christoffel.hpp"
#include "acax/criteria.hpp"
#include "acax/solution.hpp"
#include "acax/sphere_scan.hpp"
#include "acax/closed_form.hpp"
#include "acax/io.hpp"
