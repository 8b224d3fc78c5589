#include "budgetdiv/io.hpp"

#include <algorithm>
#include <cctype>
#include <cstdint>
#include <cstdio>
#include <fstream>
#include <map>
#include <sstream>
#include <unordered_map>

namespace budgetdiv {

std::string read_file(const std::string& path) {
    std::ifstream in(path, std::ios::binary);
    if (!in) throw IoError("cannot open file: " + path);
    std::ostringstream ss;
    ss << in.rdbuf();
    if (in.bad()) throw IoError("read failed: " + path);
    return ss.str();
}

void write_file(const std::string& path, const std::string& content) {
    std::ofstream out(path, std::ios::binary);
    if (!out) throw IoError("cannot open file for writing: " + path);
    out << content;
    if (!out) throw IoError("write failed: " + path);
}

namespace {

std::string strip_comment(const std::string& line) {
    auto pos = line.find('#');
    return pos == std::string::npos ? line : line.substr(0, pos);
}

std::vector<std::string> split_ws(const std::string& s) {
    std::vector<std::string> out;
    std::istringstream ss(s);
    std::string tok;
    while (ss >> tok) out.push_back(tok);
    return out;
}

long parse_count(const std::string& tok, int line_no) {
    if (tok.empty() || !std::all_of(tok.begin(), tok.end(),
                                    [](unsigned char c) { return std::isdigit(c); }))
        throw IoError("line " + std::to_string(line_no) + ": expected a positive integer count, got '" +
                      tok + "'");
    try {
        return std::stol(tok);
    } catch (const std::exception&) {
        throw IoError("line " + std::to_string(line_no) + ": count out of range: '" + tok + "'");
    }
}

}  // namespace

ApprovalProfile parse_profile_text(const std::string& text) {
    std::istringstream in(text);
    std::string line;
    int line_no = 0;
    std::vector<std::string> names;
    std::unordered_map<std::string, int> index_of;
    std::vector<BallotGroup> groups;
    bool have_header = false;
    while (std::getline(in, line)) {
        ++line_no;
        line = strip_comment(line);
        auto toks = split_ws(line);
        if (toks.empty()) continue;
        if (!have_header) {
            if (toks[0] != "candidates:")
                throw IoError("line " + std::to_string(line_no) +
                              ": profile must start with 'candidates: <names>'");
            names.assign(toks.begin() + 1, toks.end());
            if (names.empty())
                throw IoError("line " + std::to_string(line_no) + ": no candidates declared");
            for (int i = 0; i < static_cast<int>(names.size()); ++i) {
                if (!index_of.emplace(names[i], i).second)
                    throw IoError("line " + std::to_string(line_no) + ": duplicate candidate '" +
                                  names[i] + "'");
            }
            have_header = true;
            continue;
        }
        if (toks[0].empty() || toks[0].back() != ':')
            throw IoError("line " + std::to_string(line_no) +
                          ": expected '<count>: <names>', got '" + line + "'");
        long count = parse_count(toks[0].substr(0, toks[0].size() - 1), line_no);
        std::vector<int> approved;
        for (size_t i = 1; i < toks.size(); ++i) {
            auto it = index_of.find(toks[i]);
            if (it == index_of.end())
                throw IoError("line " + std::to_string(line_no) + ": unknown candidate '" + toks[i] +
                              "'");
            approved.push_back(it->second);
        }
        if (approved.empty())
            throw IoError("line " + std::to_string(line_no) + ": empty ballot");
        try {
            groups.push_back({make_ballot(approved), count});
        } catch (const Error& e) {
            throw IoError("line " + std::to_string(line_no) + ": " + e.what());
        }
    }
    if (!have_header) throw IoError("empty profile: missing 'candidates:' header");
    return ApprovalProfile(names, groups);
}

ApprovalProfile parse_profile_json(const std::string& text) {
    ordered_json j;
    try {
        j = ordered_json::parse(text);
    } catch (const nlohmann::json::exception& e) {
        throw IoError(std::string("invalid JSON: ") + e.what());
    }
    if (!j.is_object() || !j.contains("candidates") || !j.contains("groups"))
        throw IoError("profile JSON must be an object with 'candidates' and 'groups'");
    std::vector<std::string> names;
    std::unordered_map<std::string, int> index_of;
    for (const auto& c : j["candidates"]) {
        if (!c.is_string()) throw IoError("candidate names must be strings");
        names.push_back(c.get<std::string>());
    }
    for (int i = 0; i < static_cast<int>(names.size()); ++i)
        if (!index_of.emplace(names[i], i).second)
            throw IoError("duplicate candidate '" + names[i] + "'");
    std::vector<BallotGroup> groups;
    for (const auto& g : j["groups"]) {
        if (!g.is_object() || !g.contains("count") || !g.contains("ballot"))
            throw IoError("each group needs 'count' and 'ballot'");
        if (!g["count"].is_number_integer() || g["count"].get<long>() < 1)
            throw IoError("group count must be a positive integer");
        std::vector<int> approved;
        for (const auto& name : g["ballot"]) {
            if (!name.is_string()) throw IoError("ballot entries must be candidate names");
            auto it = index_of.find(name.get<std::string>());
            if (it == index_of.end())
                throw IoError("unknown candidate '" + name.get<std::string>() + "'");
            approved.push_back(it->second);
        }
        try {
            groups.push_back({make_ballot(approved), g["count"].get<long>()});
        } catch (const Error& e) {
            throw IoError(std::string("bad ballot: ") + e.what());
        }
    }
    return ApprovalProfile(names, groups);
}

ApprovalProfile parse_profile(const std::string& text) {
    for (char c : text) {
        if (std::isspace(static_cast<unsigned char>(c))) continue;
        return c == '{' ? parse_profile_json(text) : parse_profile_text(text);
    }
    throw IoError("empty profile input");
}

ApprovalProfile load_profile(const std::string& path) {
    try {
        return parse_profile(read_file(path));
    } catch (const IoError& e) {
        throw IoError(path + ": " + e.what());
    }
}

std::string profile_to_text(const ApprovalProfile& profile) {
    std::ostringstream out;
    out << "candidates:";
    for (const auto& name : profile.candidate_names()) out << ' ' << name;
    out << '\n';
    for (const auto& g : profile.groups()) {
        out << g.count << ':';
        for (int x : g.ballot.approved) out << ' ' << profile.candidate_name(x);
        out << '\n';
    }
    return out.str();
}

ordered_json profile_to_json(const ApprovalProfile& profile) {
    ordered_json j;
    j["candidates"] = profile.candidate_names();
    j["groups"] = ordered_json::array();
    for (const auto& g : profile.groups()) {
        ordered_json jg;
        jg["count"] = g.count;
        std::vector<std::string> ballot;
        for (int x : g.ballot.approved) ballot.push_back(profile.candidate_name(x));
        jg["ballot"] = ballot;
        j["groups"].push_back(jg);
    }
    return j;
}

std::variant<ExactDist, FloatDist> parse_dist_json(const std::string& text,
                                                   const ApprovalProfile& profile) {
    ordered_json j;
    try {
        j = ordered_json::parse(text);
    } catch (const nlohmann::json::exception& e) {
        throw IoError(std::string("invalid JSON: ") + e.what());
    }
    if (!j.is_object()) throw IoError("distribution must be a JSON object of name -> share");
    int m = profile.num_candidates();
    bool saw_string = false, saw_number = false;
    std::vector<Rat> exact(m, Rat(0));
    std::vector<double> approx(m, 0.0);
    for (auto it = j.begin(); it != j.end(); ++it) {
        int x;
        try {
            x = profile.candidate_index(it.key());
        } catch (const Error&) {
            throw IoError("unknown candidate '" + it.key() + "' in distribution");
        }
        if (it.value().is_string()) {
            saw_string = true;
            exact[x] = parse_rational(it.value().get<std::string>());
        } else if (it.value().is_number()) {
            saw_number = true;
            approx[x] = it.value().get<double>();
        } else {
            throw IoError("share for '" + it.key() + "' must be a \"num/den\" string or a number");
        }
    }
    if (saw_string && saw_number)
        throw IoError("distribution mixes exact (string) and float (number) shares");
    if (saw_string) {
        ExactDist d{exact};
        if (!is_distribution(d, 0.0))
            throw ValidationError("distribution shares must be nonnegative and sum to 1");
        return d;
    }
    FloatDist d{approx};
    if (!is_distribution(d, 1e-9))
        throw ValidationError("distribution shares must be nonnegative and sum to 1 (within 1e-9)");
    return d;
}

ordered_json dist_to_json(const ApprovalProfile& profile, const ExactDist& dist) {
    ordered_json j;
    for (int x = 0; x < profile.num_candidates(); ++x)
        j[profile.candidate_name(x)] = rat_str(dist.shares[x]);
    return j;
}

ordered_json dist_to_json(const ApprovalProfile& profile, const FloatDist& dist) {
    ordered_json j;
    for (int x = 0; x < profile.num_candidates(); ++x)
        j[profile.candidate_name(x)] = dist.shares[x];
    return j;
}

PaymentWillingness parse_willingness_json(const std::string& text) {
    ordered_json j;
    try {
        j = ordered_json::parse(text);
    } catch (const nlohmann::json::exception& e) {
        throw IoError(std::string("invalid JSON: ") + e.what());
    }
    if (!j.is_object() || !j.contains("rows"))
        throw IoError("payment schedule JSON needs a 'rows' object");
    std::string name = j.value("name", std::string("custom"));
    std::map<long, std::vector<Rat>> rows;
    for (auto it = j["rows"].begin(); it != j["rows"].end(); ++it) {
        long t;
        try {
            t = std::stol(it.key());
        } catch (const std::exception&) {
            throw IoError("row key must be a ballot size, got '" + it.key() + "'");
        }
        if (t < 1) throw IoError("row key must be >= 1");
        std::vector<Rat> row;
        for (const auto& v : it.value()) {
            if (!v.is_string()) throw IoError("payment entries must be \"num/den\" strings");
            row.push_back(parse_rational(v.get<std::string>()));
        }
        rows[t] = std::move(row);
    }
    try {
        return willingness_custom(name, rows);
    } catch (const Error& e) {
        throw IoError(std::string("bad payment schedule: ") + e.what());
    }
}

PaymentWillingness load_willingness(const std::string& path) {
    try {
        return parse_willingness_json(read_file(path));
    } catch (const IoError& e) {
        throw IoError(path + ": " + e.what());
    }
}

std::string float_str(double v) {
    char buf[64];
    std::snprintf(buf, sizeof(buf), "%.12g", v);
    // normalize the two zero signs so output never depends on rounding direction
    if (std::string(buf) == "-0") return "0";
    return buf;
}

std::string profile_digest(const ApprovalProfile& profile) {
    std::string text = profile_to_text(profile);
    std::uint64_t h = 1469598103934665603ull;
    for (unsigned char c : text) {
        h ^= c;
        h *= 1099511628211ull;
    }
    char buf[32];
    std::snprintf(buf, sizeof(buf), "%016llx", static_cast<unsigned long long>(h));
    return buf;
}

}  // namespace budgetdiv
