#pragma once

#include <cstdint>
#include <iosfwd>
#include <span>
#include <vector>

namespace zoomsync
{

/// One binary channel symbol: the sign of the coder innovation.
enum class Bit : std::int8_t
{
    Minus = -1,
    Plus = 1,
};

inline double to_sign(Bit b) { return static_cast<double>(static_cast<std::int8_t>(b)); }

struct CodecConfig
{
    double M0 = 5.0;     ///< initial range
    double M_inf = 0.5;  ///< limit range
    double rho = 1.0;    ///< decay per sample, in (0, 1]
    double Ts = 0.01;    ///< sampling interval [s]

    /// Throws std::invalid_argument when any field is out of its domain.
    void validate() const;
};

/// Shared coder/decoder memory.  Both ends start from c = 0, k = 0.
struct CodecState
{
    double c = 0.0;
    std::uint64_t k = 0;

    friend bool operator==(const CodecState&, const CodecState&) = default;
};

/// Static binary quantizer M*sign(y) with sign(0) = +1.
double quantize(double y, double M);

/// Zooming range M[k] = (M0 - M_inf) rho^k + M_inf, from the closed form.
double range_at(std::uint64_t k, const CodecConfig& cfg);

struct CoderStep
{
    Bit bit;
    CodecState next;
    double reconstruction;  ///< c[k] + quantized innovation, identical to the decoder output
    bool saturated;         ///< |y - c[k]| > 2 M[k]; the bit is still sent
};

CoderStep coder_step(const CodecState& state, const CodecConfig& cfg, double y);

struct DecoderStep
{
    double ybar;
    CodecState next;
};

DecoderStep decoder_step(const CodecState& state, const CodecConfig& cfg, Bit bit);

/// Zero-order hold of a sampled sequence: ybar[floor(t/Ts)].  Throws std::out_of_range
/// for negative t or t past the recorded sequence.
double hold(std::span<const double> ybar, double t, double Ts);

/// Index of the sampling interval containing t, robust to t = k*Ts rounding.
std::uint64_t sample_index(double t, double Ts);

/// Writes "k,bit" lines with '1' for +1 and '0' for -1.
void write_bit_transcript(std::ostream& out, std::span<const Bit> bits);

/// Parses a transcript written by write_bit_transcript.  Throws std::runtime_error on
/// malformed lines or non-consecutive indices.
std::vector<Bit> read_bit_transcript(std::istream& in);

} // namespace zoomsync

namespace zoomsync
{

/// Offline decoder replay of a bit stream from the matched initial state.
std::vector<double> decode_sequence(std::span<const Bit> bits, const CodecConfig& cfg);

} // namespace zoomsync
