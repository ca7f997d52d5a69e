#include "ivl/io.hpp"

#include <zlib.h>

#include <cstring>
#include <fstream>
#include <sstream>

namespace ivl {

namespace {

std::vector<Rat> parse_rat_list(const std::string& text) {
    std::vector<Rat> out;
    std::stringstream ss(text);
    std::string item;
    while (std::getline(ss, item, ',')) {
        if (!item.empty()) out.push_back(parse_rat(item));
    }
    return out;
}

std::vector<std::string> parse_string_list(const std::string& text) {
    std::vector<std::string> out;
    std::stringstream ss(text);
    std::string item;
    while (std::getline(ss, item, ',')) {
        if (!item.empty()) out.push_back(item);
    }
    return out;
}

std::string join_rats(const std::vector<Rat>& rats) {
    std::string out;
    for (std::size_t i = 0; i < rats.size(); ++i) {
        if (i) out += ",";
        out += rat_to_string(rats[i]);
    }
    return out;
}

std::string join_strings(const std::vector<std::string>& items) {
    std::string out;
    for (std::size_t i = 0; i < items.size(); ++i) {
        if (i) out += ",";
        out += items[i];
    }
    return out;
}

constexpr const char* kConfigHeader = "ivlconfig 1";

}  // namespace

std::string serialize_config(const RunConfig& cfg) {
    std::ostringstream os;
    os << kConfigHeader << "\n";
    os << "example=" << cfg.example << "\n";
    os << "epsilons=" << join_rats(cfg.epsilons) << "\n";
    os << "delta_ladder=" << join_rats(cfg.delta_ladder) << "\n";
    os << "grid_step=" << rat_to_string(cfg.grid_step) << "\n";
    os << "n_max=" << cfg.n_max << "\n";
    os << "horizon=" << cfg.horizon << "\n";
    os << "burn_in=" << cfg.burn_in << "\n";
    os << "window=" << cfg.window << "\n";
    os << "density_horizon=" << cfg.density_horizon << "\n";
    os << "delta0=" << rat_to_string(cfg.delta0) << "\n";
    os << "refute_horizon=" << cfg.refute_horizon << "\n";
    os << "mode=" << cfg.mode << "\n";
    os << "notions=" << join_strings(cfg.notions) << "\n";
    os << "out_dir=" << cfg.out_dir << "\n";
    os << "jobs=" << cfg.jobs << "\n";
    os << "seed=" << cfg.seed << "\n";
    os << "exact_threshold=" << cfg.exact_threshold << "\n";
    os << "block_depth=" << cfg.block_depth << "\n";
    os << "splice_max=" << cfg.splice_max << "\n";
    return os.str();
}

RunConfig parse_config(const std::string& text) {
    std::istringstream is(text);
    std::string line;
    if (!std::getline(is, line) || line != kConfigHeader)
        throw ParseError("config: missing or wrong header line (want '" +
                         std::string(kConfigHeader) + "')");
    RunConfig cfg;
    while (std::getline(is, line)) {
        if (line.empty() || line[0] == '#') continue;
        auto eq = line.find('=');
        if (eq == std::string::npos) throw ParseError("config: bad line: " + line);
        std::string key = line.substr(0, eq);
        std::string value = line.substr(eq + 1);
        if (key == "example") cfg.example = value;
        else if (key == "epsilons") cfg.epsilons = parse_rat_list(value);
        else if (key == "delta_ladder") cfg.delta_ladder = parse_rat_list(value);
        else if (key == "grid_step") cfg.grid_step = parse_rat(value);
        else if (key == "n_max") cfg.n_max = std::stoul(value);
        else if (key == "horizon") cfg.horizon = std::stoul(value);
        else if (key == "burn_in") cfg.burn_in = std::stoul(value);
        else if (key == "window") cfg.window = std::stoul(value);
        else if (key == "density_horizon") cfg.density_horizon = std::stoul(value);
        else if (key == "delta0") cfg.delta0 = parse_rat(value);
        else if (key == "refute_horizon") cfg.refute_horizon = std::stoul(value);
        else if (key == "mode") cfg.mode = value;
        else if (key == "notions") cfg.notions = parse_string_list(value);
        else if (key == "out_dir") cfg.out_dir = value;
        else if (key == "jobs") cfg.jobs = static_cast<unsigned>(std::stoul(value));
        else if (key == "seed") cfg.seed = std::stoul(value);
        else if (key == "exact_threshold") cfg.exact_threshold = std::stoul(value);
        else if (key == "block_depth") cfg.block_depth = std::stoul(value);
        else if (key == "splice_max") cfg.splice_max = std::stoul(value);
        else throw ParseError("config: unknown key: " + key);
        for (const Rat& e : cfg.epsilons)
            if (e <= 0) throw ParseError("config: tolerances must be positive");
        if (cfg.delta0 <= 0 || cfg.grid_step <= 0)
            throw ParseError("config: tolerances must be positive");
    }
    if (cfg.n_max < 1 || cfg.refute_horizon < 1)
        throw ParseError("config: horizons must be >= 1");
    return cfg;
}

RunConfig load_config_file(const std::string& path) {
    std::ifstream in(path, std::ios::binary);
    if (!in) throw ParseError("config: cannot open " + path);
    std::stringstream ss;
    ss << in.rdbuf();
    return parse_config(ss.str());
}

std::string config_hash(const RunConfig& cfg) {
    std::string text = serialize_config(cfg);
    uLong crc = crc32(0L, reinterpret_cast<const Bytef*>(text.data()),
                      static_cast<uInt>(text.size()));
    std::ostringstream os;
    os << std::hex << crc;
    return os.str();
}

std::string csv_field(const std::string& raw) {
    bool needs_quote = raw.find_first_of(",\"\r\n") != std::string::npos;
    if (!needs_quote) return raw;
    std::string out = "\"";
    for (char c : raw) {
        if (c == '"') out += "\"\"";
        else out += c;
    }
    out += "\"";
    return out;
}

std::string csv_row(const std::vector<std::string>& fields) {
    std::string out;
    for (std::size_t i = 0; i < fields.size(); ++i) {
        if (i) out += ",";
        out += csv_field(fields[i]);
    }
    out += "\r\n";
    return out;
}

std::string scalar_csv(const Scalar& s) {
    if (s.is_exact()) return rat_to_string(s.lo());
    std::ostringstream os;
    os << rat_to_double(s.midpoint()) << "±" << rat_to_double(s.error_bound());
    return os.str();
}

// ---- framed binary files ---------------------------------------------------

namespace {

void put_u32(std::string& buf, std::uint32_t v) {
    for (int i = 0; i < 4; ++i) buf.push_back(static_cast<char>((v >> (8 * i)) & 0xff));
}

void put_u64(std::string& buf, std::uint64_t v) {
    for (int i = 0; i < 8; ++i) buf.push_back(static_cast<char>((v >> (8 * i)) & 0xff));
}

void put_blob(std::string& buf, const std::string& blob) {
    put_u32(buf, static_cast<std::uint32_t>(blob.size()));
    buf += blob;
}

struct Reader {
    const std::string& buf;
    std::size_t pos = 0;

    bool ok(std::size_t need) const { return pos + need <= buf.size(); }
    std::optional<std::uint32_t> u32() {
        if (!ok(4)) return std::nullopt;
        std::uint32_t v = 0;
        for (int i = 0; i < 4; ++i)
            v |= static_cast<std::uint32_t>(static_cast<unsigned char>(buf[pos + i])) << (8 * i);
        pos += 4;
        return v;
    }
    std::optional<std::uint64_t> u64() {
        if (!ok(8)) return std::nullopt;
        std::uint64_t v = 0;
        for (int i = 0; i < 8; ++i)
            v |= static_cast<std::uint64_t>(static_cast<unsigned char>(buf[pos + i])) << (8 * i);
        pos += 8;
        return v;
    }
    std::optional<std::string> blob() {
        auto len = u32();
        if (!len || !ok(*len)) return std::nullopt;
        std::string out = buf.substr(pos, *len);
        pos += *len;
        return out;
    }
};

bool write_framed(const std::string& path, const char* magic, const std::string& payload) {
    std::string buf(magic);
    buf += payload;
    uLong crc = crc32(0L, reinterpret_cast<const Bytef*>(buf.data()),
                      static_cast<uInt>(buf.size()));
    put_u32(buf, static_cast<std::uint32_t>(crc));
    std::ofstream out(path, std::ios::binary | std::ios::trunc);
    if (!out) return false;
    out.write(buf.data(), static_cast<std::streamsize>(buf.size()));
    return static_cast<bool>(out);
}

std::optional<std::string> read_framed(const std::string& path, const char* magic) {
    std::ifstream in(path, std::ios::binary);
    if (!in) return std::nullopt;
    std::stringstream ss;
    ss << in.rdbuf();
    std::string buf = ss.str();
    std::size_t magic_len = std::strlen(magic);
    if (buf.size() < magic_len + 4) return std::nullopt;
    if (buf.compare(0, magic_len, magic) != 0) return std::nullopt;
    std::uint32_t stored = 0;
    for (int i = 0; i < 4; ++i)
        stored |= static_cast<std::uint32_t>(
                      static_cast<unsigned char>(buf[buf.size() - 4 + i]))
                  << (8 * i);
    uLong crc = crc32(0L, reinterpret_cast<const Bytef*>(buf.data()),
                      static_cast<uInt>(buf.size() - 4));
    if (static_cast<std::uint32_t>(crc) != stored) return std::nullopt;
    return buf.substr(magic_len, buf.size() - magic_len - 4);
}

// -- value codecs (text inside frames) --

std::string encode_state(const StatePoint& s) {
    if (std::holds_alternative<Scalar>(s)) {
        const Scalar& sc = std::get<Scalar>(s);
        if (sc.is_exact()) return "S:" + rat_to_string(sc.lo());
        return "I:" + rat_to_string(sc.lo()) + "," + rat_to_string(sc.hi());
    }
    const SymbolicPoint& p = std::get<SymbolicPoint>(s);
    return "Y:" + p.prefix() + "|" + p.cycle();
}

std::optional<StatePoint> decode_state(const std::string& text) {
    if (text.size() < 2 || text[1] != ':') return std::nullopt;
    std::string body = text.substr(2);
    try {
        if (text[0] == 'S') return Scalar::exact(parse_rat(body));
        if (text[0] == 'I') {
            auto comma = body.find(',');
            if (comma == std::string::npos) return std::nullopt;
            return Scalar::interval(parse_rat(body.substr(0, comma)),
                                    parse_rat(body.substr(comma + 1)));
        }
        if (text[0] == 'Y') {
            auto bar = body.find('|');
            if (bar == std::string::npos) return std::nullopt;
            return SymbolicPoint(body.substr(0, bar), body.substr(bar + 1));
        }
    } catch (const std::exception&) {
        return std::nullopt;
    }
    return std::nullopt;
}

std::string encode_word(const Word& w) { return word_to_string(w); }

std::optional<Word> decode_word(const std::string& text) {
    Word w;
    for (char c : text) {
        if (c < '0' || c > '9') return std::nullopt;
        w.push_back(static_cast<std::uint8_t>(c - '0'));
    }
    return w;
}

std::string encode_schedule(const Schedule& s) {
    return encode_word(s.prefix()) + "|" + encode_word(s.cycle());
}

std::optional<Schedule> decode_schedule(const std::string& text) {
    auto bar = text.find('|');
    if (bar == std::string::npos) return std::nullopt;
    auto prefix = decode_word(text.substr(0, bar));
    auto cycle = decode_word(text.substr(bar + 1));
    if (!prefix || !cycle) return std::nullopt;
    if (cycle->empty()) return Schedule::finite(*prefix);
    return Schedule::periodic(*prefix, *cycle);
}

}  // namespace

void save_span_cache(const std::string& path, const SpanCache& cache) {
    std::string payload;
    {
        std::ostringstream head;
        head << "config_hash=" << cache.config_hash << "\n"
             << "epsilon=" << rat_to_string(cache.table.epsilon) << "\n"
             << "mode=" << kernel_mode_name(cache.table.mode) << "\n"
             << "n_max=" << cache.table.n_max << "\n"
             << "grid_size=" << cache.table.grid_size << "\n"
             << "complete=" << (cache.table.complete ? 1 : 0) << "\n"
             << "pruned=" << cache.table.pruned_count << "\n"
             << "dedup=" << cache.table.dedup_collapsed << "\n";
        put_blob(payload, head.str());
    }
    {
        std::string rows;
        put_u32(rows, static_cast<std::uint32_t>(cache.table.rows.size()));
        for (const KernelRow& r : cache.table.rows) {
            put_blob(rows, encode_word(r.word));
            put_u64(rows, r.multiplicity);
            rows.push_back(r.any_indeterminate ? 1 : 0);
            std::string bits;
            bits.reserve((r.row.size() + 7) / 8);
            for (std::size_t i = 0; i < r.row.size(); i += 8) {
                unsigned char byte = 0;
                for (std::size_t b = 0; b < 8 && i + b < r.row.size(); ++b)
                    if (r.row.test(i + b)) byte |= static_cast<unsigned char>(1u << b);
                bits.push_back(static_cast<char>(byte));
            }
            put_u32(rows, static_cast<std::uint32_t>(r.row.size()));
            put_blob(rows, bits);
        }
        put_blob(payload, rows);
    }
    {
        std::string prof;
        put_u32(prof, static_cast<std::uint32_t>(cache.profile.entries.size()));
        for (const ProfileEntry& e : cache.profile.entries) {
            put_u32(prof, static_cast<std::uint32_t>(e.n));
            put_u64(prof, e.r);
            prof.push_back(static_cast<char>(e.tag));
        }
        put_blob(payload, prof);
    }
    if (!write_framed(path, "IVLK1", payload))
        throw std::runtime_error("cannot write cache file " + path);
}

std::optional<SpanCache> load_span_cache(const std::string& path) {
    auto payload = read_framed(path, "IVLK1");
    if (!payload) return std::nullopt;
    Reader reader{*payload};
    auto head = reader.blob();
    auto rows_blob = reader.blob();
    auto prof_blob = reader.blob();
    if (!head || !rows_blob || !prof_blob) return std::nullopt;

    SpanCache cache;
    {
        std::istringstream is(*head);
        std::string line;
        while (std::getline(is, line)) {
            auto eq = line.find('=');
            if (eq == std::string::npos) return std::nullopt;
            std::string key = line.substr(0, eq), value = line.substr(eq + 1);
            try {
                if (key == "config_hash") cache.config_hash = value;
                else if (key == "epsilon") cache.table.epsilon = parse_rat(value);
                else if (key == "mode")
                    cache.table.mode = value == "mean" ? KernelMode::Mean : KernelMode::Plain;
                else if (key == "n_max") cache.table.n_max = std::stoul(value);
                else if (key == "grid_size") cache.table.grid_size = std::stoul(value);
                else if (key == "complete") cache.table.complete = value == "1";
                else if (key == "pruned") cache.table.pruned_count = std::stoul(value);
                else if (key == "dedup") cache.table.dedup_collapsed = std::stoul(value);
                else return std::nullopt;
            } catch (const std::exception&) {
                return std::nullopt;
            }
        }
    }
    {
        Reader rr{*rows_blob};
        auto count = rr.u32();
        if (!count) return std::nullopt;
        for (std::uint32_t i = 0; i < *count; ++i) {
            KernelRow row;
            auto word_text = rr.blob();
            auto mult = rr.u64();
            if (!word_text || !mult || !rr.ok(1)) return std::nullopt;
            auto word = decode_word(*word_text);
            if (!word) return std::nullopt;
            row.word = *word;
            row.multiplicity = *mult;
            row.any_indeterminate = rr.buf[rr.pos++] != 0;
            auto nbits = rr.u32();
            auto bits = rr.blob();
            if (!nbits || !bits) return std::nullopt;
            row.row = Bits(*nbits);
            for (std::size_t b = 0; b < *nbits; ++b) {
                if (b / 8 >= bits->size()) return std::nullopt;
                if ((static_cast<unsigned char>((*bits)[b / 8]) >> (b % 8)) & 1) row.row.set(b);
            }
            cache.table.rows.push_back(std::move(row));
        }
    }
    {
        Reader pr{*prof_blob};
        auto count = pr.u32();
        if (!count) return std::nullopt;
        cache.profile.epsilon = cache.table.epsilon;
        cache.profile.mode = cache.table.mode;
        for (std::uint32_t i = 0; i < *count; ++i) {
            auto n = pr.u32();
            auto rv = pr.u64();
            if (!n || !rv || !pr.ok(1)) return std::nullopt;
            ProfileEntry e;
            e.n = *n;
            e.r = *rv;
            e.tag = static_cast<CoverTag>(pr.buf[pr.pos++]);
            cache.profile.entries.push_back(e);
        }
    }
    return cache;
}

namespace {

std::string encode_params(const CriterionParams& p) {
    std::ostringstream os;
    os << p.horizon << "," << p.burn_in << "," << p.window << "," << p.density_horizon;
    return os.str();
}

std::optional<CriterionParams> decode_params(const std::string& text) {
    CriterionParams p;
    std::stringstream ss(text);
    std::string item;
    std::vector<std::size_t> vals;
    try {
        while (std::getline(ss, item, ',')) vals.push_back(std::stoul(item));
    } catch (const std::exception&) {
        return std::nullopt;
    }
    if (vals.size() != 4) return std::nullopt;
    p.horizon = vals[0];
    p.burn_in = vals[1];
    p.window = vals[2];
    p.density_horizon = vals[3];
    return p;
}

std::string encode_certificate(const Certificate& c) {
    std::ostringstream os;
    os << "notion=" << notion_name(c.notion) << "\n"
       << "x=" << encode_state(c.x) << "\n"
       << "eps=" << rat_to_string(c.eps) << "\n"
       << "delta=" << rat_to_string(c.delta) << "\n"
       << "grid_h=" << rat_to_string(c.grid_h) << "\n"
       << "params=" << encode_params(c.params) << "\n";
    for (const Schedule& s : c.family) os << "omega=" << encode_schedule(s) << "\n";
    for (const auto& [y, fi] : c.witnesses)
        os << "witness=" << fi << ";" << encode_state(y) << "\n";
    return os.str();
}

std::optional<Certificate> decode_certificate(const std::string& text) {
    Certificate c;
    std::istringstream is(text);
    std::string line;
    bool have_x = false;
    while (std::getline(is, line)) {
        if (line.empty()) continue;
        auto eq = line.find('=');
        if (eq == std::string::npos) return std::nullopt;
        std::string key = line.substr(0, eq), value = line.substr(eq + 1);
        if (key == "notion") {
            auto n = parse_notion(value);
            if (!n) return std::nullopt;
            c.notion = *n;
        } else if (key == "x") {
            auto s = decode_state(value);
            if (!s) return std::nullopt;
            c.x = *s;
            have_x = true;
        } else if (key == "eps") {
            c.eps = parse_rat(value);
        } else if (key == "delta") {
            c.delta = parse_rat(value);
        } else if (key == "grid_h") {
            c.grid_h = parse_rat(value);
        } else if (key == "params") {
            auto p = decode_params(value);
            if (!p) return std::nullopt;
            c.params = *p;
        } else if (key == "omega") {
            auto s = decode_schedule(value);
            if (!s) return std::nullopt;
            c.family.push_back(*s);
        } else if (key == "witness") {
            auto sep = value.find(';');
            if (sep == std::string::npos) return std::nullopt;
            std::size_t fi = std::stoul(value.substr(0, sep));
            auto y = decode_state(value.substr(sep + 1));
            if (!y) return std::nullopt;
            c.witnesses.emplace_back(*y, fi);
        } else {
            return std::nullopt;
        }
    }
    if (!have_x) return std::nullopt;
    return c;
}

std::string encode_refutation(const Refutation& r) {
    std::ostringstream os;
    os << "notion=" << notion_name(r.notion) << "\n"
       << "x=" << encode_state(r.x) << "\n"
       << "eps=" << rat_to_string(r.eps) << "\n"
       << "delta0=" << rat_to_string(r.delta0) << "\n"
       << "horizon=" << r.horizon << "\n"
       << "grid_h=" << rat_to_string(r.grid_h) << "\n"
       << "finite=" << (r.finite_family_mode ? 1 : 0) << "\n";
    for (const TrapInterval& t : r.traps_used)
        os << "trap=" << rat_to_string(t.lo) << ";" << rat_to_string(t.hi) << ";"
           << rat_to_string(t.min_dist) << "\n";
    for (const EscapeWitness& w : r.dead_prefixes) {
        os << "dead=" << encode_word(w.prefix) << ";" << encode_state(w.y) << ";" << w.index
           << ";" << rat_to_string(w.value_lo) << ";" << static_cast<int>(w.via) << ";"
           << w.trap_index << "\n";
    }
    return os.str();
}

std::optional<Refutation> decode_refutation(const std::string& text) {
    Refutation r;
    std::istringstream is(text);
    std::string line;
    bool have_x = false;
    while (std::getline(is, line)) {
        if (line.empty()) continue;
        auto eq = line.find('=');
        if (eq == std::string::npos) return std::nullopt;
        std::string key = line.substr(0, eq), value = line.substr(eq + 1);
        try {
            if (key == "notion") {
                auto n = parse_notion(value);
                if (!n) return std::nullopt;
                r.notion = *n;
            } else if (key == "x") {
                auto s = decode_state(value);
                if (!s) return std::nullopt;
                r.x = *s;
                have_x = true;
            } else if (key == "eps") r.eps = parse_rat(value);
            else if (key == "delta0") r.delta0 = parse_rat(value);
            else if (key == "horizon") r.horizon = std::stoul(value);
            else if (key == "grid_h") r.grid_h = parse_rat(value);
            else if (key == "finite") r.finite_family_mode = value == "1";
            else if (key == "trap") {
                std::stringstream ss(value);
                std::string a, b, c;
                if (!std::getline(ss, a, ';') || !std::getline(ss, b, ';') ||
                    !std::getline(ss, c, ';'))
                    return std::nullopt;
                r.traps_used.push_back(TrapInterval{parse_rat(a), parse_rat(b), parse_rat(c)});
            } else if (key == "dead") {
                std::stringstream ss(value);
                std::string wtext, ytext, itext, vtext, viatext, ttext;
                if (!std::getline(ss, wtext, ';') || !std::getline(ss, ytext, ';') ||
                    !std::getline(ss, itext, ';') || !std::getline(ss, vtext, ';') ||
                    !std::getline(ss, viatext, ';') || !std::getline(ss, ttext, ';'))
                    return std::nullopt;
                EscapeWitness w;
                auto word = decode_word(wtext);
                auto y = decode_state(ytext);
                if (!word || !y) return std::nullopt;
                w.prefix = *word;
                w.y = *y;
                w.index = std::stoul(itext);
                w.value_lo = parse_rat(vtext);
                w.via = static_cast<EscapeWitness::Via>(std::stoi(viatext));
                w.trap_index = std::stoul(ttext);
                r.dead_prefixes.push_back(std::move(w));
            } else return std::nullopt;
        } catch (const std::exception&) {
            return std::nullopt;
        }
    }
    if (!have_x) return std::nullopt;
    return r;
}

std::string encode_record(const VerdictRecord& rec) {
    std::ostringstream os;
    os << rec.system << ";" << rec.point << ";" << notion_name(rec.notion) << ";"
       << static_cast<int>(rec.kind) << ";" << rat_to_string(rec.eps) << ";"
       << rat_to_string(rec.delta) << ";" << rec.horizon << ";" << rec.source;
    return os.str();
}

std::optional<VerdictRecord> decode_record(const std::string& text) {
    std::stringstream ss(text);
    std::vector<std::string> parts;
    std::string item;
    while (std::getline(ss, item, ';')) parts.push_back(item);
    if (parts.size() != 8) return std::nullopt;
    VerdictRecord rec;
    rec.system = parts[0];
    rec.point = parts[1];
    auto n = parse_notion(parts[2]);
    if (!n) return std::nullopt;
    rec.notion = *n;
    try {
        rec.kind = static_cast<Verdict::Kind>(std::stoi(parts[3]));
        rec.eps = parse_rat(parts[4]);
        rec.delta = parse_rat(parts[5]);
        rec.horizon = std::stoul(parts[6]);
    } catch (const std::exception&) {
        return std::nullopt;
    }
    rec.source = parts[7];
    return rec;
}

}  // namespace

void save_witness_file(const std::string& path, const WitnessFile& wf) {
    std::string payload;
    {
        std::string recs;
        put_u32(recs, static_cast<std::uint32_t>(wf.records.size()));
        for (const VerdictRecord& r : wf.records) put_blob(recs, encode_record(r));
        put_blob(payload, recs);
    }
    {
        std::string certs;
        put_u32(certs, static_cast<std::uint32_t>(wf.certificates.size()));
        for (const auto& [label, cert] : wf.certificates) {
            put_blob(certs, label);
            put_blob(certs, encode_certificate(cert));
        }
        put_blob(payload, certs);
    }
    {
        std::string refs;
        put_u32(refs, static_cast<std::uint32_t>(wf.refutations.size()));
        for (const auto& [label, ref] : wf.refutations) {
            put_blob(refs, label);
            put_blob(refs, encode_refutation(ref));
        }
        put_blob(payload, refs);
    }
    if (!write_framed(path, "IVLW1", payload))
        throw std::runtime_error("cannot write witness file " + path);
}

std::optional<WitnessFile> load_witness_file(const std::string& path) {
    auto payload = read_framed(path, "IVLW1");
    if (!payload) return std::nullopt;
    Reader reader{*payload};
    auto recs_blob = reader.blob();
    auto certs_blob = reader.blob();
    auto refs_blob = reader.blob();
    if (!recs_blob || !certs_blob || !refs_blob) return std::nullopt;

    WitnessFile wf;
    {
        Reader rr{*recs_blob};
        auto count = rr.u32();
        if (!count) return std::nullopt;
        for (std::uint32_t i = 0; i < *count; ++i) {
            auto text = rr.blob();
            if (!text) return std::nullopt;
            auto rec = decode_record(*text);
            if (!rec) return std::nullopt;
            wf.records.push_back(*rec);
        }
    }
    {
        Reader cr{*certs_blob};
        auto count = cr.u32();
        if (!count) return std::nullopt;
        for (std::uint32_t i = 0; i < *count; ++i) {
            auto label = cr.blob();
            auto text = cr.blob();
            if (!label || !text) return std::nullopt;
            auto cert = decode_certificate(*text);
            if (!cert) return std::nullopt;
            wf.certificates.emplace_back(*label, std::move(*cert));
        }
    }
    {
        Reader fr{*refs_blob};
        auto count = fr.u32();
        if (!count) return std::nullopt;
        for (std::uint32_t i = 0; i < *count; ++i) {
            auto label = fr.blob();
            auto text = fr.blob();
            if (!label || !text) return std::nullopt;
            auto ref = decode_refutation(*text);
            if (!ref) return std::nullopt;
            wf.refutations.emplace_back(*label, std::move(*ref));
        }
    }
    return wf;
}

}  // namespace ivl
