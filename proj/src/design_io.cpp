#include "twisted/designs.hpp"

#include <charconv>
#include <fstream>
#include <map>
#include <sstream>

namespace twisted {

void export_design(const Design& d, std::ostream& os)
{
    os << "twisted-design 1\n";
    os << "family=" << family_name(d.family) << " q=" << d.q << " design=" << design_name(d.id) << " mode=" << mode_name(d.mode)
       << '\n';
    const auto& h = d.header;
    os << "v=" << h.v << " b=" << h.b << " r=" << h.r << " k=" << h.k << " lambda=" << h.lambda;
    if (d.mode == Mode::Stabilizer) os << " slice=point0";
    os << '\n';
    std::string line;
    for (const auto& b : d.blocks) {
        line.clear();
        for (std::size_t i = 0; i < b.size(); ++i) {
            if (i) line += ' ';
            line += std::to_string(b[i]);
        }
        line += '\n';
        os << line;
    }
}

void export_design(const Design& d, const std::string& path)
{
    std::ofstream os(path, std::ios::binary);
    if (!os) throw std::runtime_error("cannot open " + path + " for writing");
    export_design(d, os);
    if (!os) throw std::runtime_error("write to " + path + " failed");
}

namespace {

[[noreturn]] void fail(std::size_t line, const std::string& msg)
{
    throw format_error("line " + std::to_string(line) + ": " + msg);
}

std::map<std::string, std::string> key_values(const std::string& s, std::size_t line)
{
    std::map<std::string, std::string> kv;
    std::istringstream is(s);
    std::string tok;
    while (is >> tok) {
        auto eq = tok.find('=');
        if (eq == std::string::npos || eq == 0) fail(line, "expected key=value, got '" + tok + "'");
        if (!kv.emplace(tok.substr(0, eq), tok.substr(eq + 1)).second) fail(line, "duplicate key '" + tok.substr(0, eq) + "'");
    }
    return kv;
}

std::uint64_t number(const std::map<std::string, std::string>& kv, const std::string& key, std::size_t line)
{
    auto it = kv.find(key);
    if (it == kv.end()) fail(line, "missing " + key);
    std::uint64_t v = 0;
    const auto& s = it->second;
    auto res = std::from_chars(s.data(), s.data() + s.size(), v);
    if (res.ec != std::errc() || res.ptr != s.data() + s.size()) fail(line, "bad number for " + key + ": '" + s + "'");
    return v;
}

const std::string& text(const std::map<std::string, std::string>& kv, const std::string& key, std::size_t line)
{
    auto it = kv.find(key);
    if (it == kv.end()) fail(line, "missing " + key);
    return it->second;
}

}

Design import_design(std::istream& is)
{
    Design d;
    std::string line;
    std::size_t ln = 0;
    auto next = [&]() {
        if (!std::getline(is, line)) return false;
        ++ln;
        if (!line.empty() && line.back() == '\r') fail(ln, "CRLF line ending");
        return true;
    };

    if (!next() || line != "twisted-design 1") fail(1, "expected header 'twisted-design 1'");

    if (!next()) fail(2, "missing design description");
    {
        auto kv = key_values(line, ln);
        if (kv.size() != 4) fail(ln, "expected family, q, design and mode");
        try {
            d.family = parse_family(text(kv, "family", ln));
            d.id = parse_design(text(kv, "design", ln));
            d.mode = parse_mode(text(kv, "mode", ln));
        } catch (const std::invalid_argument& e) {
            fail(ln, e.what());
        }
        d.q = unsigned(number(kv, "q", ln));
        if (design_family(d.id) != d.family) fail(ln, "design does not match family");
        if (!supported_q(d.q) || field_for_q(d.q).p() != family_char(d.family)) fail(ln, "unsupported q for family");
    }

    if (!next()) fail(3, "missing parameter line");
    {
        auto kv = key_values(line, ln);
        std::size_t want = d.mode == Mode::Stabilizer ? 6 : 5;
        if (d.mode == Mode::Stabilizer && text(kv, "slice", ln) != "point0") fail(ln, "slice must be point0");
        if (d.mode == Mode::Full && kv.count("slice")) fail(ln, "slice flag in a full design");
        if (kv.size() != want) fail(ln, "unexpected keys in parameter line");
        d.header = {number(kv, "v", ln), number(kv, "b", ln), number(kv, "r", ln), number(kv, "k", ln), number(kv, "lambda", ln)};
    }
    if (d.header.v == 0 || d.header.v > 65536) fail(3, "v out of range");

    while (next()) {
        Block b;
        const char* p = line.data();
        const char* end = p + line.size();
        while (p < end) {
            unsigned long x = 0;
            auto res = std::from_chars(p, end, x);
            if (res.ec != std::errc()) fail(ln, "bad point index");
            if (x >= d.header.v) fail(ln, "point index " + std::to_string(x) + " >= v");
            if (!b.empty() && x <= b.back()) fail(ln, "block indices not strictly ascending");
            b.push_back(point_t(x));
            p = res.ptr;
            if (p < end) {
                if (*p != ' ' || p + 1 == end || p[1] == ' ') fail(ln, "indices must be separated by single spaces");
                ++p;
            }
        }
        if (b.size() != d.header.k) fail(ln, "block has " + std::to_string(b.size()) + " points, header says k=" + std::to_string(d.header.k));
        if (!d.blocks.empty() && !(d.blocks.back() < b)) fail(ln, "blocks not in strictly increasing lexicographic order");
        d.blocks.push_back(std::move(b));
    }
    if (d.blocks.size() != d.header.b)
        fail(ln, "file lists " + std::to_string(d.blocks.size()) + " blocks, header says b=" + std::to_string(d.header.b));
    return d;
}

Design import_design(const std::string& path)
{
    std::ifstream is(path, std::ios::binary);
    if (!is) throw std::runtime_error("cannot open " + path);
    return import_design(is);
}

}
