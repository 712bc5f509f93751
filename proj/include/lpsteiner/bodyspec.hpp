#pragma once

// Body spec grammar: name[:dim-or-axes][:key=value,...]
//
//   ball:N:r=R[,cx=..,cy=..[,cz=..]]     ball of radius R (optional center)
//   ellipsoid:a,b[,c]                    semi-axes
//   lr-ball:N:r=R                        l_R unit ball, R > 2
//   rounded-cube:N:l=L                   (1-1/L) cube + (1/L) ball, L >= 1
//   rounded-box:N:w=W,rho=R              [-W,W]^N + R ball
//   capped-ellipsoid:a,b[,c]:axis=I,cut=C,side=below|above
//   box:N:w=W                            [-W,W]^N
//
// parse_body_spec throws std::invalid_argument on any malformed spec; the
// returned Body carries the canonical form of its spec in Body::spec, and
// parsing that canonical form reproduces the same body.

#include "lpsteiner/catalog.hpp"

#include <cstdlib>
#include <map>
#include <string>
#include <vector>

namespace lpsteiner {

namespace detail {

inline std::vector<std::string> split(const std::string& s, char sep) {
    std::vector<std::string> out;
    std::size_t start = 0;
    while (true) {
        std::size_t pos = s.find(sep, start);
        if (pos == std::string::npos) {
            out.push_back(s.substr(start));
            return out;
        }
        out.push_back(s.substr(start, pos - start));
        start = pos + 1;
    }
}

inline double parse_double(const std::string& t, const std::string& what) {
    if (t.empty()) throw std::invalid_argument("body spec: empty " + what);
    char* end = nullptr;
    double v = std::strtod(t.c_str(), &end);
    if (end != t.c_str() + t.size())
        throw std::invalid_argument("body spec: bad number '" + t + "' for " + what);
    return v;
}

inline int parse_int(const std::string& t, const std::string& what) {
    double v = parse_double(t, what);
    int i = static_cast<int>(v);
    if (static_cast<double>(i) != v)
        throw std::invalid_argument("body spec: " + what + " must be an integer");
    return i;
}

inline std::map<std::string, std::string> parse_kv(const std::string& t) {
    std::map<std::string, std::string> kv;
    for (const std::string& item : split(t, ',')) {
        std::size_t eq = item.find('=');
        if (eq == std::string::npos || eq == 0)
            throw std::invalid_argument("body spec: expected key=value, got '" + item + "'");
        kv[item.substr(0, eq)] = item.substr(eq + 1);
    }
    return kv;
}

// Consume keys with defaults; leftover keys are an error.
class KeyReader {
  public:
    explicit KeyReader(std::map<std::string, std::string> kv) : kv_(std::move(kv)) {}
    double number(const std::string& key, double fallback) {
        auto it = kv_.find(key);
        if (it == kv_.end()) return fallback;
        double v = parse_double(it->second, key);
        kv_.erase(it);
        return v;
    }
    double required_number(const std::string& key) {
        auto it = kv_.find(key);
        if (it == kv_.end())
            throw std::invalid_argument("body spec: missing required key '" + key + "'");
        double v = parse_double(it->second, key);
        kv_.erase(it);
        return v;
    }
    std::string required_word(const std::string& key) {
        auto it = kv_.find(key);
        if (it == kv_.end())
            throw std::invalid_argument("body spec: missing required key '" + key + "'");
        std::string v = it->second;
        kv_.erase(it);
        return v;
    }
    void finish() const {
        if (!kv_.empty())
            throw std::invalid_argument("body spec: unknown key '" + kv_.begin()->first + "'");
    }

  private:
    std::map<std::string, std::string> kv_;
};

inline std::vector<double> parse_axes(const std::string& t) {
    std::vector<double> axes;
    for (const std::string& item : split(t, ',')) axes.push_back(parse_double(item, "semi-axis"));
    if (axes.size() != 2 && axes.size() != 3)
        throw std::invalid_argument("body spec: need 2 or 3 semi-axes");
    return axes;
}

}  // namespace detail

inline Body parse_body_spec(const std::string& s) {
    std::vector<std::string> parts = detail::split(s, ':');
    const std::string& name = parts[0];
    auto dim_of = [&](std::size_t idx) {
        if (parts.size() <= idx)
            throw std::invalid_argument("body spec: '" + name + "' needs a dimension");
        int n = detail::parse_int(parts[idx], "dimension");
        if (n != 2 && n != 3)
            throw std::invalid_argument("body spec: dimension must be 2 or 3");
        return n;
    };
    auto kv_of = [&](std::size_t idx) {
        return detail::KeyReader(parts.size() > idx ? detail::parse_kv(parts[idx])
                                                    : std::map<std::string, std::string>{});
    };
    auto limit_parts = [&](std::size_t most) {
        if (parts.size() > most)
            throw std::invalid_argument("body spec: too many ':' sections for '" + name + "'");
    };

    if (name == "ball") {
        limit_parts(3);
        int n = dim_of(1);
        detail::KeyReader kr = kv_of(2);
        double r = kr.number("r", 1.0);
        Vec3 c = {kr.number("cx", 0.0), kr.number("cy", 0.0),
                  n == 3 ? kr.number("cz", 0.0) : 0.0};
        kr.finish();
        return make_ball(n, r, c);
    }
    if (name == "ellipsoid") {
        limit_parts(2);
        if (parts.size() < 2) throw std::invalid_argument("body spec: ellipsoid needs semi-axes");
        return make_ellipsoid(detail::parse_axes(parts[1]));
    }
    if (name == "lr-ball") {
        limit_parts(3);
        int n = dim_of(1);
        detail::KeyReader kr = kv_of(2);
        double r = kr.required_number("r");
        kr.finish();
        return make_lr_ball(n, r);
    }
    if (name == "rounded-cube") {
        limit_parts(3);
        int n = dim_of(1);
        detail::KeyReader kr = kv_of(2);
        double l = kr.required_number("l");
        kr.finish();
        return make_rounded_cube(n, l);
    }
    if (name == "rounded-box") {
        limit_parts(3);
        int n = dim_of(1);
        detail::KeyReader kr = kv_of(2);
        double w = kr.required_number("w");
        double rho = kr.required_number("rho");
        kr.finish();
        return make_rounded_box(n, w, rho);
    }
    if (name == "capped-ellipsoid") {
        limit_parts(3);
        if (parts.size() < 3)
            throw std::invalid_argument("body spec: capped-ellipsoid needs axes and cut keys");
        std::vector<double> axes = detail::parse_axes(parts[1]);
        detail::KeyReader kr = detail::KeyReader(detail::parse_kv(parts[2]));
        int axis = static_cast<int>(kr.required_number("axis"));
        double cut = kr.required_number("cut");
        std::string side = kr.required_word("side");
        kr.finish();
        return make_capped_ellipsoid(axes, axis, cut, side);
    }
    if (name == "box") {
        limit_parts(3);
        int n = dim_of(1);
        detail::KeyReader kr = kv_of(2);
        double w = kr.number("w", 1.0);
        kr.finish();
        return make_box(n, w);
    }
    throw std::invalid_argument("body spec: unknown body '" + name + "'");
}

// Grammar reference for --help output.
inline const char* body_spec_help() {
    return "Body specs:\n"
           "  ball:N:r=R[,cx=..,cy=..[,cz=..]]   ball of radius R, optional center\n"
           "  ellipsoid:a,b[,c]                  semi-axes (2 or 3)\n"
           "  lr-ball:N:r=R                      l_R unit ball, R > 2\n"
           "  rounded-cube:N:l=L                 (1-1/L)*cube + (1/L)*ball, L >= 1\n"
           "  rounded-box:N:w=W,rho=R            [-W,W]^N + R*ball\n"
           "  capped-ellipsoid:a,b[,c]:axis=I,cut=C,side=below|above\n"
           "  box:N:w=W                          [-W,W]^N\n";
}

}  // namespace lpsteiner
