#pragma once

namespace modsys::detail {

template <class... Ts>
struct overloaded : Ts... {
    using Ts::operator()...;
};

} // namespace modsys::detail
