#pragma once

#include <iosfwd>

#include "irlink/signal.hpp"

namespace irlink::wav {

/// 16-bit PCM, mono, little-endian RIFF/WAVE. Samples are clipped to
/// ±full_scale_v and mapped to ±32767.
void write(std::ostream& os, const Signal& signal, double full_scale_v = 1.0);

/// Reads 16-bit PCM WAVE. Multi-channel files contribute their first channel
/// only. Throws InvalidInput on anything else.
Signal read(std::istream& is, double full_scale_v = 1.0);

}  // namespace irlink::wav
