#include "so3limb/spec_format.hpp"

#include <cstdlib>
#include <sstream>

namespace so3limb {

namespace {

struct Token {
    std::string text;
    int column = 0; // 1-based
};

std::vector<Token> tokenize(const std::string& line) {
    std::vector<Token> tokens;
    std::size_t i = 0;
    while (i < line.size()) {
        while (i < line.size() && (line[i] == ' ' || line[i] == '\t')) ++i;
        if (i >= line.size()) break;
        const std::size_t start = i;
        while (i < line.size() && line[i] != ' ' && line[i] != '\t') ++i;
        tokens.push_back({line.substr(start, i - start), static_cast<int>(start) + 1});
    }
    return tokens;
}

class LineParser {
public:
    LineParser(int line_no, std::vector<Token> tokens)
        : line_(line_no), tokens_(std::move(tokens)) {}

    bool done() const { return pos_ >= tokens_.size(); }

    const Token& peek() const {
        if (done()) {
            throw ParseError(line_, end_column(), "unexpected end of line");
        }
        return tokens_[pos_];
    }

    Token next() {
        const Token t = peek();
        ++pos_;
        return t;
    }

    void expect_keyword(const std::string& kw) {
        const Token t = next();
        if (t.text != kw) {
            throw ParseError(line_, t.column, "expected '" + kw + "', got '" + t.text + "'");
        }
    }

    double real(const char* what) {
        const Token t = next();
        const char* begin = t.text.c_str();
        char* end = nullptr;
        const double v = std::strtod(begin, &end);
        if (end != begin + t.text.size() || t.text.empty()) {
            throw ParseError(line_, t.column, std::string("expected a decimal real for ") + what +
                                                  ", got '" + t.text + "'");
        }
        return v;
    }

    Vec3 vec3(const char* what) {
        const double x = real(what);
        const double y = real(what);
        const double z = real(what);
        return {x, y, z};
    }

    int end_column() const {
        if (tokens_.empty()) return 1;
        const Token& last = tokens_.back();
        return last.column + static_cast<int>(last.text.size());
    }

    void expect_done() {
        if (!done()) {
            const Token& t = tokens_[pos_];
            throw ParseError(line_, t.column, "unexpected trailing token '" + t.text + "'");
        }
    }

    int line() const { return line_; }

private:
    int line_;
    std::vector<Token> tokens_;
    std::size_t pos_ = 0;
};

} // namespace

ParsedLimbSpec parse_limb_spec(const std::string& text) {
    ParsedLimbSpec out;
    bool have_center = false;

    std::istringstream stream(text);
    std::string raw;
    int line_no = 0;
    while (std::getline(stream, raw)) {
        ++line_no;
        if (!raw.empty() && raw.back() == '\r') raw.pop_back();
        const auto hash = raw.find('#');
        const std::string body = hash == std::string::npos ? raw : raw.substr(0, hash);
        std::vector<Token> tokens = tokenize(body);
        if (tokens.empty()) continue;

        LineParser p(line_no, std::move(tokens));
        const Token head = p.next();
        if (head.text == "center") {
            if (have_center) {
                throw ParseError(line_no, head.column, "duplicate center line");
            }
            out.spec.center = p.vec3("center");
            p.expect_done();
            have_center = true;
        } else if (head.text == "joint") {
            const Token type = p.next();
            JointSpec joint;
            if (type.text == "R") {
                joint.type = JointType::Revolute;
            } else if (type.text == "P") {
                joint.type = JointType::Prismatic;
            } else {
                throw ParseError(line_no, type.column,
                                 "unknown joint type '" + type.text + "' (expected R or P)");
            }
            p.expect_keyword("dir");
            joint.direction = p.vec3("dir");
            if (joint.type == JointType::Revolute) {
                p.expect_keyword("point");
                joint.point = p.vec3("point");
            } else if (!p.done() && p.peek().text == "point") {
                p.next();
                p.vec3("point");
                out.warnings.push_back("line " + std::to_string(line_no) +
                                       ": point on a prismatic joint is ignored");
            }
            p.expect_done();
            out.spec.joints.push_back(joint);
        } else if (head.text == "descriptor") {
            std::string id;
            while (!p.done()) {
                if (!id.empty()) id += ' ';
                id += p.next().text;
            }
            if (id.empty()) {
                throw ParseError(line_no, p.end_column(), "descriptor line without an id");
            }
            out.descriptor_id = id;
        } else {
            throw ParseError(line_no, head.column, "unknown keyword '" + head.text + "'");
        }
    }

    if (!have_center) {
        throw ParseError(line_no + 1, 1, "missing 'center' line");
    }
    return out;
}

} // namespace so3limb
