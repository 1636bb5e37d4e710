// Copyright 2026 The GraphGhost Authors
// SPDX-License-Identifier: Apache-2.0

#include "graphghost/report_io.hpp"

#include <cctype>
#include <charconv>
#include <map>
#include <set>

#include "graphghost/error.hpp"
#include "json_text.hpp"

namespace graphghost {

std::string csv_field(std::string_view value) {
    const bool needs_quotes = value.find_first_of(",\"\r\n") != std::string_view::npos ||
                              (!value.empty() && (value.front() == ' ' || value.front() == '\t' ||
                                                  value.back() == ' ' || value.back() == '\t'));
    if (!needs_quotes) return std::string(value);
    std::string out = "\"";
    for (char c : value) {
        if (c == '"') out += '"';
        out += c;
    }
    out += '"';
    return out;
}

std::string csv_row(const std::vector<std::string>& fields) {
    std::string out;
    for (std::size_t i = 0; i < fields.size(); ++i) {
        if (i != 0) out += ',';
        out += csv_field(fields[i]);
    }
    out += '\n';
    return out;
}

std::vector<std::vector<std::string>> parse_csv(std::string_view text) {
    std::vector<std::vector<std::string>> rows;
    std::vector<std::string> row;
    std::string field;
    bool in_quotes = false;
    bool field_started = false;
    std::size_t i = 0;
    auto end_field = [&] {
        row.push_back(std::move(field));
        field.clear();
        field_started = false;
    };
    while (i < text.size()) {
        const char c = text[i];
        if (in_quotes) {
            if (c == '"') {
                if (i + 1 < text.size() && text[i + 1] == '"') {
                    field += '"';
                    i += 2;
                    continue;
                }
                in_quotes = false;
            } else {
                field += c;
            }
            ++i;
            continue;
        }
        if (c == '"' && field.empty()) {
            in_quotes = true;
            field_started = true;
        } else if (c == ',') {
            end_field();
        } else if (c == '\n' || c == '\r') {
            end_field();
            rows.push_back(std::move(row));
            row.clear();
            if (c == '\r' && i + 1 < text.size() && text[i + 1] == '\n') ++i;
        } else {
            field += c;
            field_started = true;
        }
        ++i;
    }
    if (in_quotes) fail(ErrorKind::format, "csv: unterminated quoted field");
    if (field_started || !field.empty() || !row.empty()) {
        end_field();
        rows.push_back(std::move(row));
    }
    return rows;
}

namespace {

template <typename T>
T parse_number(const std::string& text, const char* what) {
    T value{};
    auto [ptr, ec] = std::from_chars(text.data(), text.data() + text.size(), value);
    if (ec != std::errc() || ptr != text.data() + text.size()) {
        fail(ErrorKind::format, std::string("csv: bad ") + what + " '" + text + "'");
    }
    return value;
}

void expect_header(const std::vector<std::vector<std::string>>& rows, const std::vector<std::string>& header) {
    if (rows.empty() || rows.front() != header) fail(ErrorKind::format, "csv: unexpected header");
}

}  // namespace

std::string ranking_csv(const std::vector<RankedNode>& ranking) {
    std::string out = csv_row({"rank", "token", "layer", "kind", "score"});
    for (const auto& r : ranking) {
        out += csv_row({std::to_string(r.rank), r.key.token, std::to_string(r.key.layer),
                        std::string(kind_name(r.key.kind)), detail::format_double(r.score)});
    }
    return out;
}

std::string token_ranking_csv(const std::vector<RankedToken>& ranking) {
    std::string out = csv_row({"rank", "token", "layer", "kind", "score"});
    for (const auto& r : ranking) {
        out += csv_row({std::to_string(r.rank), r.token, "", "token", detail::format_double(r.score)});
    }
    return out;
}

std::vector<RankingRow> read_ranking_csv(std::string_view text) {
    const auto rows = parse_csv(text);
    expect_header(rows, {"rank", "token", "layer", "kind", "score"});
    std::vector<RankingRow> out;
    for (std::size_t i = 1; i < rows.size(); ++i) {
        const auto& row = rows[i];
        if (row.size() != 5) fail(ErrorKind::format, "csv: ranking row " + std::to_string(i) + " has wrong arity");
        RankingRow r;
        r.rank = parse_number<std::size_t>(row[0], "rank");
        r.token = row[1];
        if (!row[2].empty()) r.layer = parse_number<int>(row[2], "layer");
        r.kind = row[3];
        r.score = parse_number<double>(row[4], "score");
        out.push_back(std::move(r));
    }
    return out;
}

std::string layer_profile_csv(const LayerProfile& profile) {
    std::string out = csv_row({"layer", "scope", "in_degree_sum", "ratio"});
    for (const auto& [layer, share] : profile.per_layer) {
        out += csv_row({std::to_string(layer), "neuron", std::to_string(share.in_degree_sum),
                        detail::format_double(share.ratio)});
    }
    out += csv_row({std::to_string(profile.logit_layer), "logit", std::to_string(profile.logit_in_degree), ""});
    return out;
}

LayerProfile read_layer_profile_csv(std::string_view text) {
    const auto rows = parse_csv(text);
    expect_header(rows, {"layer", "scope", "in_degree_sum", "ratio"});
    LayerProfile profile;
    std::int64_t total = 0;
    for (std::size_t i = 1; i < rows.size(); ++i) {
        const auto& row = rows[i];
        if (row.size() != 4) fail(ErrorKind::format, "csv: layer row " + std::to_string(i) + " has wrong arity");
        const int layer = parse_number<int>(row[0], "layer");
        const auto degree = parse_number<std::int64_t>(row[2], "in_degree_sum");
        if (row[1] == "logit") {
            profile.logit_layer = layer;
            profile.logit_in_degree = degree;
        } else if (row[1] == "neuron") {
            profile.per_layer[layer] = {degree, parse_number<double>(row[3], "ratio")};
            total += degree;
        } else {
            fail(ErrorKind::format, "csv: unknown layer scope '" + row[1] + "'");
        }
    }
    profile.empty = total == 0;
    return profile;
}

namespace {

std::string dot_quote(std::string_view text) {
    std::string out = "\"";
    for (char c : text) {
        switch (c) {
            case '"': out += "\\\""; break;
            case '\\': out += "\\\\"; break;
            case '\n': out += "\\n"; break;
            case '\r': out += "\\r"; break;
            default: out += c;
        }
    }
    out += '"';
    return out;
}

std::string join_tags(const std::set<std::string>& tags) {
    std::string out;
    for (const auto& tag : tags) {
        if (!out.empty()) out += ';';
        out += tag;
    }
    return out;
}

}  // namespace

std::string export_dot(const GhostGraph& g) {
    std::map<NodeKey, std::size_t> index;
    std::string out = "digraph graphghost {\n";
    for (const auto& [key, tags] : g.nodes()) {
        const std::size_t id = index.size();
        index.emplace(key, id);
        out += "  n" + std::to_string(id) + " [label=" + dot_quote(display_label(key)) +
               ", kind=" + dot_quote(kind_name(key.kind)) + ", datasets=" + dot_quote(join_tags(tags)) + "];\n";
    }
    for (const auto& [edge, record] : g.edges()) {
        out += "  n" + std::to_string(index.at(edge.first)) + " -> n" + std::to_string(index.at(edge.second)) +
               " [label=" + dot_quote(std::to_string(record.weight)) + ", weight=" + std::to_string(record.weight) +
               "];\n";
    }
    out += "}\n";
    return out;
}

namespace {

class DotLexer {
public:
    explicit DotLexer(std::string_view text) : text_(text) {}

    // Returns the next token; quoted strings come back unescaped with quoted=true.
    bool next(std::string& token, bool& quoted) {
        skip_space();
        quoted = false;
        token.clear();
        if (pos_ >= text_.size()) return false;
        const char c = text_[pos_];
        if (c == '"') {
            quoted = true;
            ++pos_;
            while (pos_ < text_.size() && text_[pos_] != '"') {
                char ch = text_[pos_++];
                if (ch == '\\' && pos_ < text_.size()) {
                    const char esc = text_[pos_++];
                    ch = esc == 'n' ? '\n' : esc == 'r' ? '\r' : esc;
                }
                token += ch;
            }
            if (pos_ >= text_.size()) fail(ErrorKind::format, "dot: unterminated string");
            ++pos_;
            return true;
        }
        if (c == '-' && pos_ + 1 < text_.size() && text_[pos_ + 1] == '>') {
            token = "->";
            pos_ += 2;
            return true;
        }
        if (std::string_view("{}[]=,;").find(c) != std::string_view::npos) {
            token = std::string(1, c);
            ++pos_;
            return true;
        }
        while (pos_ < text_.size() && (std::isalnum(static_cast<unsigned char>(text_[pos_])) || text_[pos_] == '_' ||
                                       text_[pos_] == '.')) {
            token += text_[pos_++];
        }
        if (token.empty()) fail(ErrorKind::format, std::string("dot: unexpected character '") + c + "'");
        return true;
    }

private:
    void skip_space() {
        while (pos_ < text_.size() && std::isspace(static_cast<unsigned char>(text_[pos_]))) ++pos_;
    }

    std::string_view text_;
    std::size_t pos_ = 0;
};

}  // namespace

DotGraph read_dot(std::string_view text) {
    DotLexer lex(text);
    std::vector<std::pair<std::string, bool>> tokens;
    std::string token;
    bool quoted = false;
    while (lex.next(token, quoted)) tokens.emplace_back(token, quoted);

    std::size_t i = 0;
    auto at = [&](std::size_t k) -> const std::string& {
        if (k >= tokens.size()) fail(ErrorKind::format, "dot: truncated document");
        return tokens[k].first;
    };
    auto is_symbol = [&](std::size_t k, const char* sym) {
        return k < tokens.size() && !tokens[k].second && tokens[k].first == sym;
    };
    if (at(0) != "digraph") fail(ErrorKind::format, "dot: expected 'digraph'");
    i = 1;
    if (!is_symbol(i, "{")) ++i;  // graph name
    if (!is_symbol(i, "{")) fail(ErrorKind::format, "dot: expected '{'");
    ++i;

    DotGraph graph;
    while (!is_symbol(i, "}")) {
        const std::string first = at(i++);
        std::string second;
        const bool is_edge = is_symbol(i, "->");
        if (is_edge) {
            second = at(i + 1);
            i += 2;
        }
        std::map<std::string, std::string> attrs;
        if (is_symbol(i, "[")) {
            ++i;
            while (!is_symbol(i, "]")) {
                const std::string key = at(i);
                if (!is_symbol(i + 1, "=")) fail(ErrorKind::format, "dot: expected '=' after " + key);
                attrs[key] = at(i + 2);
                i += 3;
                if (is_symbol(i, ",")) ++i;
            }
            ++i;
        }
        if (is_symbol(i, ";")) ++i;
        if (is_edge) {
            DotEdge e{first, second, 0};
            if (auto it = attrs.find("weight"); it != attrs.end()) {
                e.weight = parse_number<std::int64_t>(it->second, "weight");
            }
            graph.edges.push_back(std::move(e));
        } else {
            graph.nodes.push_back({first, attrs["label"], attrs["kind"], attrs["datasets"]});
        }
    }
    return graph;
}

}  // namespace graphghost
