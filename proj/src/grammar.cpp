#include "saxmine/grammar.hpp"

#include <cassert>
#include <sstream>
#include <unordered_map>
#include <unordered_set>

#include "saxmine/timeseries.hpp"

namespace saxmine {

namespace {

// Classic online Sequitur: a doubly linked symbol list per rule plus a
// digram index. Digram uniqueness and rule utility are restored after
// every insertion.

struct Rul;

struct Sym {
    Sym* p = nullptr;
    Sym* n = nullptr;
    Rul* rule = nullptr;  // nonterminal target, or owner when guard
    int value = 0;        // terminal id
    bool guard = false;

    bool nonTerminal() const { return rule != nullptr && !guard; }
};

struct Rul {
    Sym* guard = nullptr;
    int refCount = 0;
    long serial = 0;  // stable identity for digram keys

    Sym* first() const { return guard->n; }
    Sym* last() const { return guard->p; }
};

class Sequitur {
public:
    Rul* main = nullptr;

    ~Sequitur() {
        for (Rul* r : rules_) {
            Sym* s = r->guard->n;
            while (s != r->guard) {
                Sym* nx = s->n;
                delete s;
                s = nx;
            }
            delete r->guard;
            delete r;
        }
    }

    void run(std::span<const int> tokens) {
        main = newRule();
        for (int t : tokens) {
            Sym* sym = newTerminal(t);
            insertAfter(main->last(), sym);
            check(sym->p);
        }
    }

    const std::unordered_set<Rul*>& rules() const { return rules_; }

private:
    std::unordered_map<std::uint64_t, Sym*> table_;
    std::unordered_set<Rul*> rules_;
    long nextSerial_ = 0;

    Rul* newRule() {
        Rul* r = new Rul;
        r->serial = nextSerial_++;
        r->guard = new Sym;
        r->guard->guard = true;
        r->guard->rule = r;
        r->guard->p = r->guard->n = r->guard;
        rules_.insert(r);
        return r;
    }

    Sym* newTerminal(int v) {
        Sym* s = new Sym;
        s->value = v;
        return s;
    }

    Sym* newNonTerminal(Rul* r) {
        Sym* s = new Sym;
        s->rule = r;
        ++r->refCount;
        return s;
    }

    Sym* copyOf(const Sym* s) {
        return s->nonTerminal() ? newNonTerminal(s->rule) : newTerminal(s->value);
    }

    static std::uint64_t symKey(const Sym* s) {
        // terminals and rules live in disjoint key spaces
        return s->nonTerminal() ? ((std::uint64_t(s->rule->serial) << 1) | 1)
                                : (std::uint64_t(std::uint32_t(s->value)) << 1);
    }

    static std::uint64_t digramKey(const Sym* s) {
        return (symKey(s) << 32) | symKey(s->n);
    }

    void forgetDigram(Sym* s) {
        if (s->guard || s->n == nullptr || s->n->guard) return;
        auto it = table_.find(digramKey(s));
        if (it == table_.end() || it->second != s) return;
        table_.erase(it);
        // an overlap-suppressed twin (the aaa case) takes over tracking,
        // otherwise a later occurrence of this digram would never match
        Sym* t = s->n;
        if (t->n && !t->n->guard && symKey(t) == symKey(s) &&
            symKey(t->n) == symKey(t))
            table_[digramKey(t)] = t;
    }

    void join(Sym* left, Sym* right) {
        if (left->n) forgetDigram(left);
        left->n = right;
        right->p = left;
    }

    void insertAfter(Sym* pos, Sym* s) {
        join(s, pos->n);
        join(pos, s);
    }

    // Unlink and delete one symbol, maintaining the digram index and
    // rule reference counts.
    void removeSym(Sym* s) {
        forgetDigram(s);
        join(s->p, s->n);
        if (s->nonTerminal()) --s->rule->refCount;
        delete s;
    }

    // Enforce digram uniqueness for the digram starting at s.
    bool check(Sym* s) {
        if (s->guard || s->n->guard) return false;
        const auto key = digramKey(s);
        auto it = table_.find(key);
        if (it == table_.end()) {
            table_[key] = s;
            return false;
        }
        Sym* m = it->second;
        // overlapping digrams (aaa) are left alone
        if (m == s || m->n == s || s->n == m) return true;
        matchDigram(s, m);
        return true;
    }

    void matchDigram(Sym* s, Sym* m) {
        Rul* r;
        if (m->p->guard && m->n->n->guard) {
            // m is a complete rule body: reuse that rule
            r = m->p->rule;
            substitute(s, r);
        } else {
            r = newRule();
            insertAfter(r->last(), copyOf(s));
            insertAfter(r->last(), copyOf(s->n));
            substitute(m, r);
            substitute(s, r);
            table_[digramKey(r->first())] = r->first();
        }
        // rule utility: a rule down to a single reference gets inlined
        Sym* f = r->first();
        if (f->nonTerminal() && f->rule->refCount == 1) expand(f);
    }

    // Replace the digram starting at s with a reference to r.
    void substitute(Sym* s, Rul* r) {
        Sym* q = s->p;
        removeSym(s);
        removeSym(q->n);
        Sym* nt = newNonTerminal(r);
        insertAfter(q, nt);
        if (!check(q)) check(nt);
    }

    // Inline the sole remaining reference to a rule and delete the rule.
    void expand(Sym* s) {
        Rul* r = s->rule;
        Sym* left = s->p;
        Sym* right = s->n;
        Sym* f = r->first();
        Sym* l = r->last();
        forgetDigram(s);
        join(left, f);
        join(l, right);
        delete s;
        rules_.erase(r);
        delete r->guard;
        delete r;
        check(l);
    }
};

}  // namespace

Grammar inferGrammar(std::span<const int> tokens) {
    if (tokens.empty()) throw InvalidInput("inferGrammar: empty input");
    Sequitur seq;
    seq.run(tokens);

    // Number reachable rules in first-appearance order, top-down.
    Grammar g;
    std::unordered_map<const Rul*, int> ids;
    std::vector<const Rul*> order;
    auto tokenOf = [&](const Sym* s) {
        if (!s->nonTerminal()) return Token{Token::Kind::Terminal, s->value};
        auto [it, fresh] = ids.try_emplace(s->rule, int(order.size()));
        if (fresh) order.push_back(s->rule);
        return Token{Token::Kind::Rule, it->second};
    };
    for (const Sym* s = seq.main->first(); s != seq.main->guard; s = s->n)
        g.sequence.push_back(tokenOf(s));
    for (std::size_t i = 0; i < order.size(); ++i) {
        std::vector<Token> body;
        for (const Sym* s = order[i]->first(); s != order[i]->guard; s = s->n)
            body.push_back(tokenOf(s));
        g.rules[int(i)] = std::move(body);
    }
    for (const auto& [rid, body] : g.rules) g.useCount[rid] = 0;
    auto countRefs = [&](const std::vector<Token>& ts) {
        for (const Token& t : ts)
            if (t.kind == Token::Kind::Rule) ++g.useCount[t.id];
    };
    countRefs(g.sequence);
    for (const auto& [rid, body] : g.rules) countRefs(body);
    return g;
}

namespace {

void expandToken(const Grammar& g, const Token& t, int depth,
                 std::vector<UnwrappedToken>& out, int guard) {
    if (guard > 1'000'000)
        throw CorruptGrammar("expandToken: rule nesting too deep (cycle?)");
    if (t.kind == Token::Kind::Terminal) {
        out.push_back({t.id, depth});
        return;
    }
    auto it = g.rules.find(t.id);
    if (it == g.rules.end())
        throw CorruptGrammar("dangling rule reference R" + std::to_string(t.id));
    for (const Token& b : it->second)
        expandToken(g, b, depth + 1, out, guard + 1);
}

}  // namespace

std::vector<int> expandGrammar(const Grammar& g) {
    std::vector<int> out;
    for (const UnwrappedToken& u : unwrapGrammar(g)) out.push_back(u.terminalId);
    return out;
}

std::vector<UnwrappedToken> unwrapGrammar(const Grammar& g) {
    std::vector<UnwrappedToken> out;
    for (const Token& t : g.sequence) expandToken(g, t, 0, out, 0);
    return out;
}

std::string dumpGrammar(const Grammar& g,
                        const std::vector<std::string>* names) {
    std::ostringstream os;
    auto put = [&](const Token& t) {
        if (t.kind == Token::Kind::Rule) {
            os << " R" << t.id;
        } else if (names && t.id >= 0 && std::size_t(t.id) < names->size()) {
            os << ' ' << (*names)[t.id];
        } else {
            os << ' ' << t.id;
        }
    };
    os << "S ->";
    for (const Token& t : g.sequence) put(t);
    os << '\n';
    for (const auto& [rid, body] : g.rules) {
        os << 'R' << rid << " ->";
        for (const Token& t : body) put(t);
        os << '\n';
    }
    return os.str();
}

}  // namespace saxmine
