#include "ccs/io.hpp"

#include <bit>
#include <cstdint>
#include <cstdio>
#include <cstring>
#include <fstream>

namespace ccs {

namespace {

void put_u32(std::string& out, std::uint32_t v) {
    for (int i = 0; i < 4; ++i) out.push_back(static_cast<char>((v >> (8 * i)) & 0xff));
}

void put_u64(std::string& out, std::uint64_t v) {
    for (int i = 0; i < 8; ++i) out.push_back(static_cast<char>((v >> (8 * i)) & 0xff));
}

void put_f64(std::string& out, double d) { put_u64(out, std::bit_cast<std::uint64_t>(d)); }

std::uint32_t get_u32(const std::string& s, size_t off) {
    std::uint32_t v = 0;
    for (int i = 0; i < 4; ++i) v |= static_cast<std::uint32_t>(static_cast<unsigned char>(s[off + i])) << (8 * i);
    return v;
}

std::uint64_t get_u64(const std::string& s, size_t off) {
    std::uint64_t v = 0;
    for (int i = 0; i < 8; ++i) v |= static_cast<std::uint64_t>(static_cast<unsigned char>(s[off + i])) << (8 * i);
    return v;
}

double get_f64(const std::string& s, size_t off) { return std::bit_cast<double>(get_u64(s, off)); }

} // namespace

void write_solutions(const std::string& path, int n, int dim, const std::vector<Configuration>& configs,
                     bool undecided_kind) {
    std::string out;
    out.reserve(24 + configs.size() * static_cast<size_t>(n) * dim * 16);
    const char* magic = undecided_kind ? kMagicUndecided : kMagicSolutions;
    out.append(magic, 4);
    put_u32(out, 1u);
    put_u32(out, static_cast<std::uint32_t>(n));
    put_u32(out, static_cast<std::uint32_t>(dim));
    put_u64(out, static_cast<std::uint64_t>(configs.size()));
    for (const auto& cfg : configs) {
        for (int i = 0; i < n; ++i)
            for (int c = 0; c < dim; ++c) {
                put_f64(out, cfg.q[i][c].lo);
                put_f64(out, cfg.q[i][c].hi);
            }
    }
    std::string tmp = path + ".tmp";
    {
        std::ofstream f(tmp, std::ios::binary | std::ios::trunc);
        if (!f) throw std::runtime_error("cannot open " + tmp + " for writing");
        f.write(out.data(), static_cast<std::streamsize>(out.size()));
        if (!f) throw std::runtime_error("short write to " + tmp);
    }
    if (std::rename(tmp.c_str(), path.c_str()) != 0) throw std::runtime_error("cannot rename " + tmp);
}

SolutionFileData read_solutions(const std::string& path) {
    std::ifstream f(path, std::ios::binary);
    if (!f) throw std::runtime_error("cannot open " + path);
    std::string s((std::istreambuf_iterator<char>(f)), std::istreambuf_iterator<char>());
    if (s.size() < 24) throw TruncatedFile();
    SolutionFileData data;
    if (std::memcmp(s.data(), kMagicSolutions, 4) == 0)
        data.undecided_kind = false;
    else if (std::memcmp(s.data(), kMagicUndecided, 4) == 0)
        data.undecided_kind = true;
    else
        throw BadMagic();
    if (get_u32(s, 4) != 1u) throw VersionMismatch();
    data.n = static_cast<int>(get_u32(s, 8));
    data.dim = static_cast<int>(get_u32(s, 12));
    std::uint64_t count = get_u64(s, 16);
    if (data.n < 2 || data.n > kMaxBodies || (data.dim != 2 && data.dim != 3)) throw TruncatedFile();
    const std::uint64_t rec = static_cast<std::uint64_t>(data.n) * data.dim * 16;
    if (s.size() != 24 + count * rec) throw TruncatedFile();
    size_t off = 24;
    data.configs.reserve(count);
    for (std::uint64_t k = 0; k < count; ++k) {
        Configuration cfg;
        cfg.n = data.n;
        cfg.dim = data.dim;
        for (int i = 0; i < data.n; ++i) {
            for (int c = 0; c < data.dim; ++c) {
                double lo = get_f64(s, off);
                double hi = get_f64(s, off + 8);
                off += 16;
                if (!(lo <= hi)) throw TruncatedFile();
                cfg.q[i][c] = Interval(lo, hi);
            }
            if (data.dim == 2) cfg.q[i][2] = Interval(0.0);
        }
        data.configs.push_back(std::move(cfg));
    }
    return data;
}

namespace {

struct Dec {
    int exp10 = 0;        // value = digits[0].digits[1...] * 10^exp10
    std::string digits;   // 19 significant decimal digits
    bool ok = false;
};

Dec decimal19(double x) {
    Dec d;
    char buf[64];
    std::snprintf(buf, sizeof buf, "%.18e", x);
    const char* p = buf;
    if (*p == '-') return d;  // caller handles signs
    d.digits.push_back(*p++);
    if (*p == '.') ++p;
    while (*p && *p != 'e' && *p != 'E') d.digits.push_back(*p++);
    if (*p != 'e' && *p != 'E') return d;
    d.exp10 = std::atoi(p + 1);
    d.ok = d.digits.size() == 19;
    return d;
}

std::string positional(const std::string& digits, int exp10) {
    if (exp10 < 0) {
        std::string s = "0.";
        s.append(static_cast<size_t>(-exp10 - 1), '0');
        s += digits;
        return s;
    }
    if (exp10 + 1 >= static_cast<int>(digits.size())) {
        std::string s = digits;
        s.append(static_cast<size_t>(exp10 + 1) - digits.size(), '0');
        return s;
    }
    return digits.substr(0, exp10 + 1) + "." + digits.substr(exp10 + 1);
}

std::string plain_pair(const Interval& v) {
    char buf[96];
    std::snprintf(buf, sizeof buf, "[%.17g, %.17g]", v.lo, v.hi);
    return buf;
}

} // namespace

std::string format_bracket(const Interval& v) {
    if (v.lo == v.hi) {
        char buf[48];
        std::snprintf(buf, sizeof buf, "%.17g", v.lo);
        return buf;
    }
    if (v.hi < 0) {
        std::string inner = format_bracket(Interval(-v.hi, -v.lo));
        return "-" + inner;
    }
    if (v.lo <= 0) return plain_pair(v);

    Dec lo = decimal19(v.lo), hi = decimal19(v.hi);
    if (!lo.ok || !hi.ok || lo.exp10 != hi.exp10 || lo.exp10 < -6 || lo.exp10 > 15) return plain_pair(v);

    size_t diff = 0;
    while (diff < 19 && lo.digits[diff] == hi.digits[diff]) ++diff;
    int prec = static_cast<int>(diff) + 1;
    if (prec < 12) prec = 12;
    if (prec > 17) prec = 17;

    std::string lod = lo.digits.substr(0, prec);  // truncation rounds the lower endpoint down
    std::string hid = hi.digits.substr(0, prec);
    bool dropped = false;
    for (size_t i = prec; i < hi.digits.size(); ++i)
        if (hi.digits[i] != '0') dropped = true;
    if (dropped) {
        int i = prec - 1;
        while (i >= 0) {
            if (hid[i] != '9') {
                ++hid[i];
                break;
            }
            hid[i] = '0';
            --i;
        }
        if (i < 0) return plain_pair(v);  // carry out of the leading digit
    }

    std::string ls = positional(lod, lo.exp10), hs = positional(hid, hi.exp10);
    size_t cp = 0;
    while (cp < ls.size() && cp < hs.size() && ls[cp] == hs[cp]) ++cp;
    if (cp == ls.size() && cp == hs.size()) return ls;
    return ls.substr(0, cp) + "[" + ls.substr(cp) + "," + hs.substr(cp) + "]";
}

Interval parse_bracket(const std::string& s) {
    auto nudge = [](double lo, double hi) { return Interval(rnd::next_down(lo), rnd::next_up(hi)); };
    size_t lb = s.find('[');
    if (lb == std::string::npos) {
        double x = std::strtod(s.c_str(), nullptr);
        return Interval(x, x);
    }
    size_t comma = s.find(',', lb);
    size_t rb = s.find(']', lb);
    if (comma == std::string::npos || rb == std::string::npos || comma > rb)
        throw std::runtime_error("malformed bracket: " + s);
    std::string prefix = s.substr(0, lb);
    std::string a = prefix + s.substr(lb + 1, comma - lb - 1);
    std::string b = prefix + s.substr(comma + 1, rb - comma - 1);
    // Plain "[lo, hi]" form has an empty prefix already handled by the same path.
    double lo = std::strtod(a.c_str(), nullptr);
    double hi = std::strtod(b.c_str(), nullptr);
    if (lo > hi) std::swap(lo, hi);
    return nudge(lo, hi);
}

namespace {

std::string sigma_cycles(const std::vector<int>& sigma) {
    const int n = static_cast<int>(sigma.size());
    std::vector<bool> seen(n, false);
    std::string out;
    for (int i = 0; i < n; ++i) {
        if (seen[i]) continue;
        out += "(";
        int j = i;
        bool first = true;
        while (!seen[j]) {
            seen[j] = true;
            if (!first) out += " ";
            out += std::to_string(j);
            first = false;
            j = sigma[j];
        }
        out += ")";
    }
    return out;
}

std::string element_line(const SymmetryElement& e) {
    char buf[128];
    switch (e.kind) {
        case ElementKind::Identity:
            return "identity";
        case ElementKind::Rotation:
            std::snprintf(buf, sizeof buf, "rotation by 2*pi*%d/%d, sigma = %s", e.turns, e.order,
                          sigma_cycles(e.sigma).c_str());
            return buf;
        case ElementKind::Reflection:
            std::snprintf(buf, sizeof buf, "reflection (normal %.3f %.3f %.3f), sigma = %s", e.mirror_normal[0],
                          e.mirror_normal[1], e.mirror_normal[2], sigma_cycles(e.sigma).c_str());
            return buf;
        case ElementKind::PointInversion:
            std::snprintf(buf, sizeof buf, "point inversion, sigma = %s", sigma_cycles(e.sigma).c_str());
            return buf;
        case ElementKind::RotoReflection:
            std::snprintf(buf, sizeof buf, "rotoreflection by 2*pi*%d/%d, sigma = %s", e.turns, e.order,
                          sigma_cycles(e.sigma).c_str());
            return buf;
        default:
            return "undecidable element";
    }
}

} // namespace

std::string render_report(const std::vector<ClassifiedSolution>& classes, int n, int dim) {
    std::string out;
    int n_spatial = 0, n_planar = 0, n_collinear = 0;
    for (const auto& c : classes) {
        if (c.sol.geometry == Geometry::Spatial) ++n_spatial;
        else if (c.sol.geometry == Geometry::Planar) ++n_planar;
        else if (c.sol.geometry == Geometry::Collinear) ++n_collinear;
    }
    out += "central configurations, n=" + std::to_string(n) + " dim=" + std::to_string(dim) + "\n";
    out += "classes: " + std::to_string(classes.size()) + " (spatial " + std::to_string(n_spatial) + ", planar " +
           std::to_string(n_planar) + ", collinear " + std::to_string(n_collinear) + ")\n\n";

    const std::string xname = "x_" + std::to_string(n - 2);
    int no_spatial = 0, no_planar = 0, no_collinear = 0;
    for (const auto& c : classes) {
        if (c.sol.geometry == Geometry::Spatial) {
            out += "spatial solution no " + std::to_string(++no_spatial) + ": " + c.label + "\n";
        } else if (c.sol.geometry == Geometry::Planar) {
            out += "planar solution no " + std::to_string(++no_planar) + "\n";
        } else {
            out += "collinear solution no " + std::to_string(++no_collinear) + "\n";
        }
        out += "  U   = " + format_bracket(c.sol.inv.U) + "\n";
        out += "  J   = " + format_bracket(c.sol.inv.J) + "\n";
        out += "  " + xname + " = " + format_bracket(c.sol.inv.x_last) + "\n";
        if (c.sol.geometry == Geometry::Spatial) {
            out += "  symmetry group order " + std::to_string(c.sol.symmetries.order()) + "\n";
            for (const auto& e : c.sol.symmetries.elements) out += "    " + element_line(e) + "\n";
        }
        out += "\n";
    }
    return out;
}

} // namespace ccs
