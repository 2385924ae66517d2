#include "zoomsync/codec.hpp"

#include <cmath>
#include <istream>
#include <ostream>
#include <stdexcept>
#include <string>

namespace zoomsync
{

void CodecConfig::validate() const
{
    if (!(rho > 0.0 && rho <= 1.0))
        throw std::invalid_argument("codec: rho must lie in (0, 1]");
    if (!(M_inf > 0.0))
        throw std::invalid_argument("codec: M_inf must be positive");
    if (!(M0 >= M_inf))
        throw std::invalid_argument("codec: M0 must be at least M_inf");
    if (!(Ts > 0.0) || !std::isfinite(Ts))
        throw std::invalid_argument("codec: Ts must be positive");
}

double quantize(double y, double M)
{
    return y >= 0.0 ? M : -M;
}

double range_at(std::uint64_t k, const CodecConfig& cfg)
{
    return (cfg.M0 - cfg.M_inf) * std::pow(cfg.rho, static_cast<double>(k)) + cfg.M_inf;
}

CoderStep coder_step(const CodecState& state, const CodecConfig& cfg, double y)
{
    const double M = range_at(state.k, cfg);
    const double innovation = y - state.c;
    const double q = quantize(innovation, M);
    const double c_next = state.c + q;
    return CoderStep{
        innovation >= 0.0 ? Bit::Plus : Bit::Minus,
        CodecState{c_next, state.k + 1},
        c_next,
        std::abs(innovation) > 2.0 * M,
    };
}

DecoderStep decoder_step(const CodecState& state, const CodecConfig& cfg, Bit bit)
{
    const double M = range_at(state.k, cfg);
    const double c_next = state.c + to_sign(bit) * M;
    return DecoderStep{c_next, CodecState{c_next, state.k + 1}};
}

std::uint64_t sample_index(double t, double Ts)
{
    if (!(t >= 0.0))
        throw std::out_of_range("sample_index: negative time");
    auto k = static_cast<std::uint64_t>(std::floor(t / Ts));
    if (static_cast<double>(k + 1) * Ts <= t)
        ++k;
    else if (k > 0 && static_cast<double>(k) * Ts > t)
        --k;
    return k;
}

double hold(std::span<const double> ybar, double t, double Ts)
{
    const auto k = sample_index(t, Ts);
    if (k >= ybar.size())
        throw std::out_of_range("hold: time beyond recorded sequence");
    return ybar[k];
}

void write_bit_transcript(std::ostream& out, std::span<const Bit> bits)
{
    for (std::size_t k = 0; k < bits.size(); ++k)
        out << k << ',' << (bits[k] == Bit::Plus ? '1' : '0') << '\n';
}

std::vector<Bit> read_bit_transcript(std::istream& in)
{
    std::vector<Bit> bits;
    std::string line;
    while (std::getline(in, line))
    {
        if (line.empty())
            continue;
        const auto comma = line.find(',');
        if (comma == std::string::npos || comma + 2 != line.size())
            throw std::runtime_error("bit transcript: malformed line '" + line + "'");
        if (std::stoull(line.substr(0, comma)) != bits.size())
            throw std::runtime_error("bit transcript: non-consecutive index");
        const char symbol = line[comma + 1];
        if (symbol != '0' && symbol != '1')
            throw std::runtime_error("bit transcript: symbol must be 0 or 1");
        bits.push_back(symbol == '1' ? Bit::Plus : Bit::Minus);
    }
    return bits;
}

} // namespace zoomsync

namespace zoomsync
{

std::vector<double> decode_sequence(std::span<const Bit> bits, const CodecConfig& cfg)
{
    std::vector<double> out;
    out.reserve(bits.size());
    CodecState state;
    for (Bit b : bits)
    {
        const auto step = decoder_step(state, cfg, b);
        out.push_back(step.ybar);
        state = step.next;
    }
    return out;
}

} // namespace zoomsync
