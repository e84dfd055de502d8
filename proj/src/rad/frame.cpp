#include "ocproc/rad/frame.hpp"

#include <algorithm>

namespace ocproc::rad {

std::vector<const RawFrame*> FrameStack::band_frames(int band) const {
    std::vector<const RawFrame*> out;
    for (const RawFrame& f : frames)
        if (f.band == band) out.push_back(&f);
    std::sort(out.begin(), out.end(),
              [](const RawFrame* a, const RawFrame* b) { return a->start_time < b->start_time; });
    return out;
}

std::vector<double> FrameStack::frame_times() const {
    if (frames.empty()) raise(ErrorKind::domain, "empty frame stack");
    std::vector<double> times;
    for (const RawFrame& f : frames)
        if (f.band == frames.front().band) times.push_back(f.start_time);
    std::sort(times.begin(), times.end());
    for (std::size_t i = 1; i < times.size(); ++i)
        if (!(times[i] > times[i - 1]))
            raise(ErrorKind::data, "frame timestamps are not strictly increasing");
    return times;
}

void validate_stack(const FrameStack& stack) {
    if (stack.frames.empty()) raise(ErrorKind::domain, "empty frame stack");
    const ModeTraits& t = mode_traits(stack.mode);
    std::vector<double> times = stack.frame_times();
    for (const RawFrame& f : stack.frames) {
        if (f.mode != stack.mode) raise(ErrorKind::data, "mixed acquisition modes in stack");
        if (f.rows() != t.frame_rows || f.cols() != t.frame_cols)
            raise(ErrorKind::data, "frame dimensions do not match the mode");
        unsigned max_count = (1u << t.bit_depth) - 1u;
        for (std::uint16_t v : f.counts.values())
            if (v > max_count)
                raise(ErrorKind::data, "counts exceed the mode bit depth");
    }
    for (int band : stack.bands) {
        auto bf = stack.band_frames(band);
        if (bf.size() != times.size())
            raise(ErrorKind::data, "bands carry different frame counts");
    }
}

}  // namespace ocproc::rad
