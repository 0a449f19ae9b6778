#include "bnsens/network_io.hpp"

#include "bnsens/error.hpp"

#include <cctype>
#include <fstream>
#include <optional>
#include <set>
#include <sstream>

namespace bnsens {

namespace {

struct Token {
    std::string text;
    std::size_t column;
};

std::vector<Token> tokenize(std::string_view line) {
    std::vector<Token> out;
    std::size_t i = 0;
    while (i < line.size()) {
        if (line[i] == '#') break;
        if (std::isspace(static_cast<unsigned char>(line[i]))) {
            ++i;
            continue;
        }
        std::size_t start = i;
        if (line[i] == ':') {
            ++i;
        } else {
            while (i < line.size() && !std::isspace(static_cast<unsigned char>(line[i])) && line[i] != ':' &&
                   line[i] != '#')
                ++i;
        }
        out.push_back({std::string(line.substr(start, i - start)), start + 1});
    }
    return out;
}

class Parser {
public:
    Network run(std::string_view text) {
        std::size_t line_no = 0;
        std::size_t pos = 0;
        while (pos <= text.size()) {
            auto end = text.find('\n', pos);
            if (end == std::string_view::npos) end = text.size();
            ++line_no;
            line_ = line_no;
            handle(tokenize(text.substr(pos, end - pos)));
            pos = end + 1;
        }
        if (!seen_header_) throw ParseError(line_no, 0, "missing 'network' header");
        return std::move(net_);
    }

private:
    [[noreturn]] void fail(const Token& t, const std::string& what) const { throw ParseError(line_, t.column, what); }
    [[noreturn]] void fail(const std::string& what) const { throw ParseError(line_, 0, what); }

    void handle(const std::vector<Token>& tokens) {
        if (tokens.empty()) return;
        const auto& head = tokens.front().text;
        if (head == "network") return header(tokens);
        if (!seen_header_) fail(tokens.front(), "expected 'network <name>' first");
        if (head == "variable") return variable(tokens);
        if (head == "cpt") return cpt(tokens);
        row(tokens);
    }

    void header(const std::vector<Token>& tokens) {
        if (seen_header_) fail(tokens.front(), "duplicate 'network' header");
        if (tokens.size() != 2) fail(tokens.front(), "expected 'network <name>'");
        net_ = Network(tokens[1].text);
        seen_header_ = true;
    }

    void variable(const std::vector<Token>& tokens) {
        current_.reset();
        if (tokens.size() < 4 || tokens[2].text != "values")
            fail(tokens.front(), "expected 'variable <name> values <v1> <v2> ...'");
        std::vector<std::string> values;
        for (std::size_t i = 3; i < tokens.size(); ++i) values.push_back(tokens[i].text);
        try {
            net_.add_variable(tokens[1].text, std::move(values));
        } catch (const InvalidArgument& e) {
            fail(tokens[1], e.what());
        }
    }

    void cpt(const std::vector<Token>& tokens) {
        if (tokens.size() < 2) fail(tokens.front(), "expected 'cpt <var> [given <parents>]'");
        auto v = net_.find_variable(tokens[1].text);
        if (!v) fail(tokens[1], "unknown variable '" + tokens[1].text + "'");
        if (!with_cpt_.insert(*v).second) fail(tokens[1], "duplicate cpt for '" + tokens[1].text + "'");
        std::vector<std::size_t> parents;
        if (tokens.size() > 2) {
            if (tokens[2].text != "given" || tokens.size() == 3)
                fail(tokens[2], "expected 'given <p1> <p2> ...'");
            for (std::size_t i = 3; i < tokens.size(); ++i) {
                auto p = net_.find_variable(tokens[i].text);
                if (!p) fail(tokens[i], "unknown parent '" + tokens[i].text + "'");
                parents.push_back(*p);
            }
        }
        try {
            net_.set_parents(*v, std::move(parents));
        } catch (const InvalidArgument& e) {
            fail(tokens[1], e.what());
        }
        current_ = *v;
        rows_seen_.clear();
    }

    void row(const std::vector<Token>& tokens) {
        if (!current_) fail(tokens.front(), "unexpected '" + tokens.front().text + "' outside a cpt block");
        const auto v = *current_;
        const auto& ps = net_.parents(v);
        std::size_t first_entry = 0;
        std::vector<std::size_t> config;
        if (!ps.empty()) {
            if (tokens.size() <= ps.size() || tokens[ps.size()].text != ":")
                fail(tokens.front(), "expected " + std::to_string(ps.size()) + " parent values followed by ':'");
            for (std::size_t k = 0; k < ps.size(); ++k) {
                auto idx = net_.variable(ps[k]).value_index(tokens[k].text);
                if (!idx) fail(tokens[k], "unknown value '" + tokens[k].text + "' of '" + net_.variable(ps[k]).name + "'");
                config.push_back(*idx);
            }
            first_entry = ps.size() + 1;
        }
        std::vector<Rational> entries;
        for (std::size_t i = first_entry; i < tokens.size(); ++i) {
            auto q = parse_rational(tokens[i].text);
            if (!q) fail(tokens[i], "malformed rational '" + tokens[i].text + "'");
            entries.push_back(*q);
        }
        if (entries.empty()) fail(tokens.front(), "row without probabilities");
        auto r = net_.row_index(v, config);
        if (!rows_seen_.insert(r).second) fail(tokens.front(), "duplicate row for this parent configuration");
        net_.set_row(v, r, std::move(entries));
    }

    Network net_;
    bool seen_header_ = false;
    std::size_t line_ = 0;
    std::optional<std::size_t> current_;
    std::set<std::size_t> with_cpt_;
    std::set<std::size_t> rows_seen_;
};

} // namespace

Network parse_network(std::string_view text) {
    Network net = Parser{}.run(text);
    require_valid(net);
    return net;
}

std::string serialize_network(const Network& net) {
    std::ostringstream out;
    out << "network " << net.name() << "\n";
    for (const auto& var : net.variables()) {
        out << "variable " << var.name << " values";
        for (const auto& v : var.values) out << " " << v;
        out << "\n";
    }
    for (std::size_t v = 0; v < net.size(); ++v) {
        const auto& ps = net.parents(v);
        out << "cpt " << net.variable(v).name;
        if (!ps.empty()) {
            out << " given";
            for (auto p : ps) out << " " << net.variable(p).name;
        }
        out << "\n";
        for (std::size_t r = 0; r < net.row_count(v); ++r) {
            out << " ";
            if (!ps.empty()) {
                auto vals = net.row_parent_values(v, r);
                for (std::size_t k = 0; k < ps.size(); ++k) out << " " << net.variable(ps[k]).values[vals[k]];
                out << " :";
            }
            for (const auto& q : net.row(v, r)) out << " " << to_string(q);
            out << "\n";
        }
    }
    return out.str();
}

Network load_network(const std::string& path) {
    std::ifstream in(path);
    if (!in) throw InvalidArgument("cannot open network file '" + path + "'");
    std::stringstream buf;
    buf << in.rdbuf();
    return parse_network(buf.str());
}

void save_network(const Network& net, const std::string& path) {
    std::ofstream out(path);
    if (!out) throw InvalidArgument("cannot write network file '" + path + "'");
    out << serialize_network(net);
}

} // namespace bnsens
