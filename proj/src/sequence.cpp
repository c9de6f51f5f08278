#include "fps/sequence.hpp"

#include <algorithm>
#include <limits>
#include <mutex>
#include <stdexcept>

namespace fps {

struct CoeffSequence::Impl {
    virtual ~Impl() = default;
    virtual double at_double(long n) const = 0;
    virtual std::optional<Rational> at_exact(long n) const = 0;
    virtual bool exact_capable() const = 0;
};

namespace {

struct ListImpl final : CoeffSequence::Impl {
    std::vector<Rational> items;

    double at_double(long n) const override {
        if (n < 0) throw std::invalid_argument("coefficient index must be >= 0");
        return n < static_cast<long>(items.size()) ? items[static_cast<std::size_t>(n)].get_d()
                                                   : 0.0;
    }
    std::optional<Rational> at_exact(long n) const override {
        if (n < 0) throw std::invalid_argument("coefficient index must be >= 0");
        return n < static_cast<long>(items.size()) ? items[static_cast<std::size_t>(n)]
                                                   : Rational(0);
    }
    bool exact_capable() const override { return true; }
};

struct RuleImpl final : CoeffSequence::Impl {
    RulePtr ast;
    bool exact;

    double at_double(long n) const override {
        if (n < 0) throw std::invalid_argument("coefficient index must be >= 0");
        return eval_rule_double(*ast, n);
    }
    std::optional<Rational> at_exact(long n) const override {
        if (n < 0) throw std::invalid_argument("coefficient index must be >= 0");
        if (!exact) return std::nullopt;
        return eval_rule_exact(*ast, n);
    }
    bool exact_capable() const override { return exact; }
};

struct ProductImpl final : CoeffSequence::Impl {
    std::shared_ptr<const CoeffSequence::Impl> lhs, rhs;
    bool exact;

    mutable std::mutex mu;
    mutable std::vector<double> la, lb;       // memoized child prefixes
    mutable std::vector<Rational> qa, qb;

    void extend_double(long n) const {
        while (static_cast<long>(la.size()) <= n) la.push_back(lhs->at_double(static_cast<long>(la.size())));
        while (static_cast<long>(lb.size()) <= n) lb.push_back(rhs->at_double(static_cast<long>(lb.size())));
    }

    double at_double(long n) const override {
        if (n < 0) throw std::invalid_argument("coefficient index must be >= 0");
        std::lock_guard<std::mutex> lock(mu);
        extend_double(n);
        double c = 0.0;
        for (long j = 0; j <= n; ++j)
            c += la[static_cast<std::size_t>(j)] * lb[static_cast<std::size_t>(n - j)];
        return c;
    }

    std::optional<Rational> at_exact(long n) const override {
        if (n < 0) throw std::invalid_argument("coefficient index must be >= 0");
        if (!exact) return std::nullopt;
        std::lock_guard<std::mutex> lock(mu);
        while (static_cast<long>(qa.size()) <= n) qa.push_back(*lhs->at_exact(static_cast<long>(qa.size())));
        while (static_cast<long>(qb.size()) <= n) qb.push_back(*rhs->at_exact(static_cast<long>(qb.size())));
        Rational c(0);
        for (long j = 0; j <= n; ++j)
            c += qa[static_cast<std::size_t>(j)] * qb[static_cast<std::size_t>(n - j)];
        return c;
    }

    bool exact_capable() const override { return exact; }
};

}  // namespace

CoeffSequence CoeffSequence::from_list(std::vector<Rational> items) {
    auto impl = std::make_shared<ListImpl>();
    for (auto& x : items) scalar_canonicalize(x);
    impl->items = std::move(items);
    CoeffSequence s;
    s.label_ = "list[" + std::to_string(impl->items.size()) + "]";
    s.impl_ = std::move(impl);
    // A finite list is a polynomial outer series: radius +infinity, exactly.
    s.radius_ = RadiusHint{std::numeric_limits<double>::infinity(), false};
    return s;
}

CoeffSequence CoeffSequence::from_rule(const std::string& text) {
    auto impl = std::make_shared<RuleImpl>();
    impl->ast = parse_rule_text(text);
    impl->exact = sqrt_free(*impl->ast);
    CoeffSequence s;
    s.label_ = "rule:" + text;
    if (auto r = derive_radius(*impl->ast)) s.radius_ = RadiusHint{*r, false};
    s.impl_ = std::move(impl);
    return s;
}

void CoeffSequence::assert_radius(double value) {
    if (!(value >= 0))  // NaN rejected too
        throw std::invalid_argument("radius hint must be a nonnegative number or infinity");
    radius_ = RadiusHint{value, true};
}

double CoeffSequence::coeff_double(long n) const { return impl_->at_double(n); }

std::optional<Rational> CoeffSequence::coeff_exact(long n) const { return impl_->at_exact(n); }

bool CoeffSequence::exact_capable() const { return impl_->exact_capable(); }

const std::vector<Rational>* CoeffSequence::as_list() const {
    if (auto* l = dynamic_cast<const ListImpl*>(impl_.get())) return &l->items;
    return nullptr;
}

CoeffSequence cauchy_seq_product(const CoeffSequence& a, const CoeffSequence& b) {
    auto impl = std::make_shared<ProductImpl>();
    impl->lhs = a.impl_;
    impl->rhs = b.impl_;
    impl->exact = a.exact_capable() && b.exact_capable();
    CoeffSequence s;
    s.label_ = "product(" + a.label() + ", " + b.label() + ")";
    if (a.radius() && b.radius())
        s.radius_ = RadiusHint{std::min(a.radius()->value, b.radius()->value), false};
    s.impl_ = std::move(impl);
    return s;
}

}  // namespace fps
