#include "gsc/errors.hpp"
