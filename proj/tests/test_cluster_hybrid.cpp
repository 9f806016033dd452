#include "claimkit/core.hpp"
