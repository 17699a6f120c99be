#include "relbac/path.hpp"

#include <cctype>

#include "relbac/errors.hpp"

namespace relbac {

bool PathLabel::matches(const EdgeLabel& el) const {
    switch (tag) {
        case Tag::Rel:
            return el.tag == EdgeLabel::Tag::Rel && el.name == name;
        case Tag::AllowAudit:
            return el.tag == EdgeLabel::Tag::AllowAudit && el.name == name;
        case Tag::DenyAudit:
            return el.tag == EdgeLabel::Tag::DenyAudit && el.name == name;
        case Tag::ActiveInterest:
            return el.tag == EdgeLabel::Tag::ActiveInterest;
        case Tag::BlockedInterest:
            return el.tag == EdgeLabel::Tag::BlockedInterest;
    }
    return false;
}

std::string PathLabel::to_string() const {
    switch (tag) {
        case Tag::Rel: return name;
        case Tag::AllowAudit: return "allow!" + name;
        case Tag::DenyAudit: return "deny!" + name;
        case Tag::ActiveInterest: return "@active";
        case Tag::BlockedInterest: return "@blocked";
    }
    return "?";
}

namespace {

PathPtr make(PathCondition::Kind kind, PathLabel label, PathPtr l, PathPtr r) {
    auto node = std::make_shared<PathCondition>();
    node->kind = kind;
    node->label = std::move(label);
    node->left = std::move(l);
    node->right = std::move(r);
    return node;
}

}  // namespace

PathPtr diamond() { return make(PathCondition::Kind::Diamond, {}, nullptr, nullptr); }
PathPtr edge(PathLabel label) {
    return make(PathCondition::Kind::Edge, std::move(label), nullptr, nullptr);
}
PathPtr reversed_edge(PathLabel label) {
    return make(PathCondition::Kind::ReversedEdge, std::move(label), nullptr, nullptr);
}
PathPtr concat(PathPtr a, PathPtr b) {
    return make(PathCondition::Kind::Concat, {}, std::move(a), std::move(b));
}
PathPtr plus(PathPtr inner) {
    return make(PathCondition::Kind::Plus, {}, std::move(inner), nullptr);
}

PathPtr reversed(PathPtr inner) {
    switch (inner->kind) {
        case PathCondition::Kind::Edge: return reversed_edge(inner->label);
        case PathCondition::Kind::ReversedEdge: return edge(inner->label);
        default: return make(PathCondition::Kind::Reverse, {}, std::move(inner), nullptr);
    }
}

bool equal(const PathPtr& a, const PathPtr& b) {
    if (a == b) return true;
    if (!a || !b) return false;
    if (a->kind != b->kind || a->label != b->label) return false;
    switch (a->kind) {
        case PathCondition::Kind::Diamond:
        case PathCondition::Kind::Edge:
        case PathCondition::Kind::ReversedEdge:
            return true;
        case PathCondition::Kind::Concat:
            return equal(a->left, b->left) && equal(a->right, b->right);
        case PathCondition::Kind::Plus:
        case PathCondition::Kind::Reverse:
            return equal(a->left, b->left);
    }
    return false;
}

bool is_simple(const PathPtr& pc) {
    switch (pc->kind) {
        case PathCondition::Kind::Diamond:
        case PathCondition::Kind::Edge:
        case PathCondition::Kind::ReversedEdge:
            return true;
        case PathCondition::Kind::Concat:
            return pc->left->kind != PathCondition::Kind::Diamond &&
                   pc->right->kind != PathCondition::Kind::Diamond &&
                   is_simple(pc->left) && is_simple(pc->right);
        case PathCondition::Kind::Plus:
            return pc->left->kind != PathCondition::Kind::Diamond && is_simple(pc->left);
        case PathCondition::Kind::Reverse:
            return false;
    }
    return false;
}

std::size_t leaf_count(const PathPtr& pc) {
    switch (pc->kind) {
        case PathCondition::Kind::Diamond: return 0;
        case PathCondition::Kind::Edge:
        case PathCondition::Kind::ReversedEdge: return 1;
        case PathCondition::Kind::Concat:
            return leaf_count(pc->left) + leaf_count(pc->right);
        case PathCondition::Kind::Plus:
        case PathCondition::Kind::Reverse:
            return leaf_count(pc->left);
    }
    return 0;
}

PathPtr simplify(const PathPtr& pc) {
    switch (pc->kind) {
        case PathCondition::Kind::Diamond:
        case PathCondition::Kind::Edge:
        case PathCondition::Kind::ReversedEdge:
            return pc;
        case PathCondition::Kind::Concat: {
            PathPtr l = simplify(pc->left);
            PathPtr r = simplify(pc->right);
            if (l->kind == PathCondition::Kind::Diamond) return r;
            if (r->kind == PathCondition::Kind::Diamond) return l;
            if (l == pc->left && r == pc->right) return pc;
            return concat(std::move(l), std::move(r));
        }
        case PathCondition::Kind::Plus: {
            PathPtr inner = simplify(pc->left);
            if (inner->kind == PathCondition::Kind::Diamond) return inner;
            if (inner == pc->left) return pc;
            return plus(std::move(inner));
        }
        case PathCondition::Kind::Reverse: {
            // Push the reversal through the simplified operand.
            PathPtr inner = simplify(pc->left);
            switch (inner->kind) {
                case PathCondition::Kind::Diamond: return inner;
                case PathCondition::Kind::Edge: return reversed_edge(inner->label);
                case PathCondition::Kind::ReversedEdge: return edge(inner->label);
                case PathCondition::Kind::Concat:
                    return simplify(concat(reversed(inner->right), reversed(inner->left)));
                case PathCondition::Kind::Plus:
                    return simplify(plus(reversed(inner->left)));
                case PathCondition::Kind::Reverse:
                    // Unreachable: simplify never yields a Reverse node.
                    return simplify(inner->left);
            }
            return inner;
        }
    }
    return pc;
}

namespace {

class Parser {
public:
    explicit Parser(const std::string& text) : text_(text) {}

    PathPtr parse() {
        PathPtr result = parse_expr();
        skip_ws();
        if (pos_ != text_.size())
            throw ParseError("unexpected trailing input", pos_);
        return result;
    }

private:
    void skip_ws() {
        while (pos_ < text_.size() && std::isspace(static_cast<unsigned char>(text_[pos_])))
            ++pos_;
    }

    bool eat(char c) {
        skip_ws();
        if (pos_ < text_.size() && text_[pos_] == c) {
            ++pos_;
            return true;
        }
        return false;
    }

    char peek() {
        skip_ws();
        return pos_ < text_.size() ? text_[pos_] : '\0';
    }

    // expr := term ('.' term)*
    PathPtr parse_expr() {
        PathPtr left = parse_term();
        while (eat('.')) left = concat(std::move(left), parse_term());
        return left;
    }

    // term := factor '+'*
    PathPtr parse_term() {
        PathPtr node = parse_factor();
        while (eat('+')) node = plus(std::move(node));
        return node;
    }

    // factor := '~' factor | atom
    PathPtr parse_factor() {
        if (eat('~')) return reversed(parse_factor());
        return parse_atom();
    }

    PathPtr parse_atom() {
        skip_ws();
        if (pos_ >= text_.size()) throw ParseError("expected a path term", pos_);
        char c = text_[pos_];
        if (c == '(') {
            ++pos_;
            PathPtr inner = parse_expr();
            if (!eat(')')) throw ParseError("expected ')'", pos_);
            return inner;
        }
        if (c == '<') {
            if (text_.compare(pos_, 2, "<>") == 0) {
                pos_ += 2;
                return diamond();
            }
            throw ParseError("expected '<>'", pos_);
        }
        return edge(parse_label());
    }

    PathLabel parse_label() {
        skip_ws();
        std::size_t at = pos_;
        if (at < text_.size() && text_[at] == '@') {
            ++pos_;
            std::string word = parse_ident("interest keyword");
            if (word == "active") return PathLabel::active_interest();
            if (word == "blocked") return PathLabel::blocked_interest();
            throw ParseError("unknown interest label @" + word, at);
        }
        std::string word = parse_ident("label");
        if ((word == "allow" || word == "deny") && pos_ < text_.size() &&
            text_[pos_] == '!') {
            ++pos_;
            std::string action = parse_ident("action");
            return word == "allow" ? PathLabel::allow_audit(action)
                                   : PathLabel::deny_audit(action);
        }
        return PathLabel::rel(word);
    }

    std::string parse_ident(const char* what) {
        std::size_t at = pos_;
        auto ok_first = [](char c) {
            return std::isalpha(static_cast<unsigned char>(c)) || c == '_';
        };
        auto ok_rest = [](char c) {
            return std::isalnum(static_cast<unsigned char>(c)) || c == '_';
        };
        if (at >= text_.size() || !ok_first(text_[at]))
            throw ParseError(std::string("expected ") + what, at);
        std::size_t end = at + 1;
        while (end < text_.size() && ok_rest(text_[end])) ++end;
        pos_ = end;
        return text_.substr(at, end - at);
    }

    const std::string& text_;
    std::size_t pos_ = 0;
};

// Precedence levels for rendering: concat < plus < atom-ish.
enum Level { kConcat = 1, kPlus = 2, kAtom = 3 };

int level_of(const PathPtr& pc) {
    switch (pc->kind) {
        case PathCondition::Kind::Concat: return kConcat;
        case PathCondition::Kind::Plus: return kPlus;
        default: return kAtom;  // leaves render atomically; Reverse is self-wrapping
    }
}

void render_into(const PathPtr& pc, std::string& out, int min_level) {
    bool parens = level_of(pc) < min_level;
    if (parens) out += "( ";
    switch (pc->kind) {
        case PathCondition::Kind::Diamond:
            out += "<>";
            break;
        case PathCondition::Kind::Edge:
            out += pc->label.to_string();
            break;
        case PathCondition::Kind::ReversedEdge:
            out += "~" + pc->label.to_string();
            break;
        case PathCondition::Kind::Concat:
            render_into(pc->left, out, kConcat);
            out += " . ";
            render_into(pc->right, out, kConcat + 1);
            break;
        case PathCondition::Kind::Plus:
            render_into(pc->left, out, kPlus);
            out += "+";
            break;
        case PathCondition::Kind::Reverse:
            out += "~( ";
            render_into(pc->left, out, kConcat);
            out += " )";
            break;
    }
    if (parens) out += " )";
}

}  // namespace

PathPtr parse_path(const std::string& text) { return Parser(text).parse(); }

std::string render(const PathPtr& pc) {
    std::string out;
    render_into(pc, out, kConcat);
    return out;
}

}  // namespace relbac
