#include "s3e/poly/system.hpp"

#include <cstdint>
#include <fstream>
#include <sstream>

namespace s3e {

namespace {

std::string_view trim(std::string_view s) {
    while (!s.empty() && std::isspace(static_cast<unsigned char>(s.front()))) s.remove_prefix(1);
    while (!s.empty() && std::isspace(static_cast<unsigned char>(s.back()))) s.remove_suffix(1);
    return s;
}

bool starts_with(std::string_view s, std::string_view prefix) { return s.substr(0, prefix.size()) == prefix; }

}  // namespace

void PolySystem::check() const {
    for (const auto& p : polys)
        if (!same_vars(p.vars(), vars)) throw PolyError("system polynomial on a foreign variable table");
}

PolySystem PolySystem::with_order(MonomialOrder o) const {
    PolySystem r = *this;
    r.order = o;
    for (auto& p : r.polys) p = p.with_order(o);
    return r;
}

PolySystem parse_system(std::string_view text) {
    PolySystem sys;
    std::size_t line_no = 0;
    std::size_t pos = 0;
    std::vector<std::pair<std::string, std::size_t>> pending;
    while (pos <= text.size()) {
        std::size_t end = text.find('\n', pos);
        if (end == std::string_view::npos) end = text.size();
        std::string_view raw = text.substr(pos, end - pos);
        pos = end + 1;
        ++line_no;
        std::string_view line = trim(raw);
        if (line.empty()) {
            if (end == text.size()) break;
            continue;
        }
        if (line.front() == '#') {
            std::string_view body = trim(line.substr(1));
            if (starts_with(body, "case:"))
                sys.label = std::string(trim(body.substr(5)));
            else if (starts_with(body, "note:"))
                sys.note = std::string(trim(body.substr(5)));
        } else if (starts_with(line, "vars:")) {
            if (sys.vars) throw ParseError("duplicate vars: header", line_no, 1);
            std::vector<std::string> names;
            std::istringstream in{std::string(line.substr(5))};
            for (std::string n; in >> n;) names.push_back(n);
            if (names.empty()) throw ParseError("empty vars: header", line_no, 1);
            try {
                sys.vars = make_vars(std::move(names));
            } catch (const PolyError& e) {
                throw ParseError(e.what(), line_no, 1);
            }
        } else if (starts_with(line, "order:")) {
            try {
                sys.order = parse_order(trim(line.substr(6)));
            } catch (const PolyError& e) {
                throw ParseError(e.what(), line_no, 1);
            }
        } else {
            if (!sys.vars) throw ParseError("polynomial before vars: header", line_no, 1);
            pending.emplace_back(std::string(line), line_no);
        }
        if (end == text.size()) break;
    }
    if (!sys.vars) throw ParseError("missing vars: header");
    for (const auto& [line, no] : pending) sys.polys.push_back(parse_poly(line, sys.vars, sys.order, no));
    return sys;
}

std::string read_text_file(const std::filesystem::path& path) {
    std::ifstream in(path, std::ios::binary);
    if (!in) throw std::runtime_error("cannot open '" + path.string() + "'");
    std::ostringstream ss;
    ss << in.rdbuf();
    return ss.str();
}

void write_text_file(const std::filesystem::path& path, std::string_view text) {
    std::ofstream out(path, std::ios::binary);
    if (!out) throw std::runtime_error("cannot write '" + path.string() + "'");
    out << text;
}

PolySystem read_system_file(const std::filesystem::path& path) { return parse_system(read_text_file(path)); }

std::string format_system(const PolySystem& sys, const std::vector<std::string>& comments) {
    std::string out;
    if (!sys.label.empty()) out += "# case: " + sys.label + "\n";
    if (!sys.note.empty()) out += "# note: " + sys.note + "\n";
    for (const auto& c : comments) out += "# " + c + "\n";
    out += "vars:";
    for (const auto& n : sys.vars->names()) out += " " + n;
    out += "\norder: ";
    out += to_string(sys.order);
    out += "\n";
    for (const auto& p : sys.polys) out += to_string(p.with_order(sys.order)) + "\n";
    return out;
}

void write_system_file(const std::filesystem::path& path, const PolySystem& sys,
                       const std::vector<std::string>& comments) {
    write_text_file(path, format_system(sys, comments));
}

std::string fnv1a_hex(std::string_view text) {
    std::uint64_t h = 1469598103934665603ULL;
    for (unsigned char ch : text) {
        h ^= ch;
        h *= 1099511628211ULL;
    }
    static const char* digits = "0123456789abcdef";
    std::string out(16, '0');
    for (int i = 15; i >= 0; --i) {
        out[static_cast<std::size_t>(i)] = digits[h & 0xf];
        h >>= 4;
    }
    return out;
}

std::string system_hash(const PolySystem& sys) {
    PolySystem bare = sys;
    bare.label.clear();
    bare.note.clear();
    return fnv1a_hex(format_system(bare));
}

}  // namespace s3e
