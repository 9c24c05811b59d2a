#ifndef BSS_BSS_HPP
#define BSS_BSS_HPP

#include "bss/basis.hpp"
#include "bss/bounds.hpp"
#include "bss/error.hpp"
#include "bss/moduli.hpp"
#include "bss/operators.hpp"
#include "bss/report.hpp"
#include "bss/taylor.hpp"
#include "bss/types.hpp"
#include "bss/weighted.hpp"

#endif // BSS_BSS_HPP
