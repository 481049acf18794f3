#include "decsym/kinf.hh"

#include <cmath>
#include <sstream>
#include <stdexcept>

namespace decsym {

KinfFn KinfFn::linear(Decimal c) {
    if (!(c > Decimal())) throw std::invalid_argument("linear gain must be positive");
    KinfFn f;
    f.f_ = Linear{c};
    return f;
}

KinfFn KinfFn::power(double c, double p) {
    if (!(c > 0) || !(p > 0)) throw std::invalid_argument("power form needs c, p > 0");
    KinfFn f;
    f.f_ = Power{c, p};
    return f;
}

KinfFn KinfFn::table(std::vector<std::pair<double, double>> pts) {
    if (pts.empty()) throw std::invalid_argument("empty table form");
    double ps = 0, pv = 0;
    for (auto& [s, v] : pts) {
        if (!(s > ps) || !(v > pv))
            throw std::invalid_argument("table samples must increase strictly from (0,0)");
        ps = s;
        pv = v;
    }
    KinfFn f;
    f.f_ = Table{std::move(pts)};
    return f;
}

double KinfFn::eval(double s) const {
    if (s < 0) throw std::domain_error("K-infinity argument must be >= 0");
    if (auto* l = std::get_if<Linear>(&f_)) return l->c.to_double() * s;
    if (auto* p = std::get_if<Power>(&f_)) return p->c * std::pow(s, p->p);
    const auto& pts = std::get<Table>(f_).pts;
    double s0 = 0, v0 = 0;
    for (auto& [s1, v1] : pts) {
        if (s <= s1) return v0 + (v1 - v0) * (s - s0) / (s1 - s0);
        s0 = s1;
        v0 = v1;
    }
    // past the last sample: continue with the final segment's slope
    double slope;
    if (pts.size() >= 2) {
        auto& a = pts[pts.size() - 2];
        auto& b = pts.back();
        slope = (b.second - a.second) / (b.first - a.first);
    } else {
        slope = pts[0].second / pts[0].first;
    }
    return v0 + slope * (s - s0);
}

double KinfFn::inv(double y) const {
    if (y < 0) throw std::domain_error("K-infinity inverse argument must be >= 0");
    if (auto* l = std::get_if<Linear>(&f_)) return y / l->c.to_double();
    if (auto* p = std::get_if<Power>(&f_)) return std::pow(y / p->c, 1.0 / p->p);
    const auto& pts = std::get<Table>(f_).pts;
    double v_last = pts.back().second;
    if (y > v_last) {
        double slope, s0 = pts.back().first, v0 = v_last;
        if (pts.size() >= 2) {
            auto& a = pts[pts.size() - 2];
            slope = (v0 - a.second) / (s0 - a.first);
        } else {
            slope = v0 / s0;
        }
        return s0 + (y - v0) / slope;
    }
    double lo = 0, hi = pts.back().first;
    while (hi - lo > 1e-12) {
        double mid = 0.5 * (lo + hi);
        if (eval(mid) < y)
            lo = mid;
        else
            hi = mid;
    }
    return 0.5 * (lo + hi);
}

std::string KinfFn::str() const {
    std::ostringstream out;
    if (auto* l = std::get_if<Linear>(&f_)) {
        out << "linear " << l->c.str();
    } else if (auto* p = std::get_if<Power>(&f_)) {
        out << "power " << p->c << " " << p->p;
    } else {
        out << "table";
        for (auto& [s, v] : std::get<Table>(f_).pts) out << " " << s << ":" << v;
    }
    return out.str();
}

} // namespace decsym
