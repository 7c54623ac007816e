#include "cfl/form.hpp"
