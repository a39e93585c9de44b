#include "ctxkit/pps_weak.hpp"

#include "ctxkit/errors.hpp"

#include <cmath>
#include <complex>

namespace ctx {

namespace {

std::complex<double> sandwich(const Ket& post, const Op& op, const Ket& pre) {
    return (post.adjoint() * op * pre)(0, 0);
}

bool same_op(const Op& a, const Op& b, double tol = 1e-9) {
    return (a - b).cwiseAbs().maxCoeff() <= tol;
}

} // namespace

double abl_probability(const PPSExperiment& e, const std::string& measurement,
                       std::size_t outcome) {
    const auto it = e.measurements.find(measurement);
    if (it == e.measurements.end())
        throw UnknownName("no measurement named " + measurement);
    const auto& pvm = it->second;
    if (outcome >= pvm.size()) throw OutOfRange("outcome index out of range");

    double denom = 0.0;
    for (const auto& p : pvm) denom += std::norm(sandwich(e.post, p, e.pre));
    if (denom < 1e-14)
        throw ZeroPostSelectionProbability("post-selection never succeeds");
    return std::norm(sandwich(e.post, pvm[outcome], e.pre)) / denom;
}

double weak_value(const Op& op, const Ket& pre, const Ket& post) {
    const std::complex<double> overlap = post.dot(pre);
    if (std::abs(overlap) < 1e-12)
        throw OrthogonalPrePost("weak value undefined for orthogonal selections");
    return (sandwich(post, op, pre) / overlap).real();
}

AlgebraicConditionReport algebraic_conditions(const std::vector<std::pair<Op, double>>& f) {
    AlgebraicConditionReport rep;
    if (f.empty()) return rep;
    const auto dim = f[0].first.rows();
    const Op zero = Op::Zero(dim, dim);
    const Op id = Op::Identity(dim, dim);

    auto value_of = [&](const Op& p) -> const double* {
        for (const auto& [q, v] : f)
            if (same_op(p, q)) return &v;
        return nullptr;
    };

    for (const auto& [p, v] : f) {
        if (rep.range_ok && (v < -1e-9 || v > 1.0 + 1e-9)) {
            rep.range_ok = false;
            if (rep.violation.empty())
                rep.violation = "(alpha) value " + std::to_string(v) + " outside [0,1]";
        }
        if (rep.boundary_ok && same_op(p, zero) && std::abs(v) > 1e-9) {
            rep.boundary_ok = false;
            if (rep.violation.empty()) rep.violation = "(beta) f(0) = " + std::to_string(v);
        }
        if (rep.boundary_ok && same_op(p, id) && std::abs(v - 1.0) > 1e-9) {
            rep.boundary_ok = false;
            if (rep.violation.empty()) rep.violation = "(beta) f(I) = " + std::to_string(v);
        }
    }

    for (std::size_t i = 0; i < f.size(); ++i) {
        for (std::size_t j = i + 1; j < f.size(); ++j) {
            const Op& p = f[i].first;
            const Op& q = f[j].first;
            if ((p * q - q * p).cwiseAbs().maxCoeff() > 1e-9) continue;
            const Op meet = p * q;
            const Op join = p + q - meet;
            const double* fm = value_of(meet);
            const double* fj = value_of(join);
            if (!fm || !fj)
                throw FamilyNotClosed("meet or join of a commuting pair carries no value");
            const double expected = f[i].second + f[j].second - *fm;
            if (std::abs(*fj - expected) > 1e-9) {
                rep.additivity_ok = false;
                if (rep.violation.empty())
                    rep.violation = "(gamma) f(P v Q) = " + std::to_string(*fj) +
                                    " but f(P)+f(Q)-f(PQ) = " + std::to_string(expected);
                return rep;
            }
        }
    }
    return rep;
}

std::vector<std::pair<Op, double>> abl_closure(const PPSExperiment& e,
                                               const std::vector<Op>& family) {
    const auto dim = e.pre.size();
    std::vector<Op> closed = {Op::Zero(dim, dim), Op::Identity(dim, dim)};
    auto add = [&](const Op& p) {
        for (const auto& q : closed)
            if (same_op(p, q)) return;
        closed.push_back(p);
    };
    for (const auto& p : family) add(p);

    for (std::size_t i = 0; i < closed.size(); ++i) {
        for (std::size_t j = 0; j < i; ++j) {
            const Op& p = closed[i];
            const Op& q = closed[j];
            if ((p * q - q * p).cwiseAbs().maxCoeff() > 1e-9) continue;
            add(p * q);
            add(p + q - p * q);
            if (closed.size() > 64)
                throw FamilyNotClosed("commuting closure exceeds 64 projectors");
        }
    }

    std::vector<std::pair<Op, double>> valued;
    PPSExperiment scratch{e.pre, e.post, {}};
    for (const auto& p : closed) {
        scratch.measurements["binary"] = {p, Op::Identity(dim, dim) - p};
        valued.push_back({p, abl_probability(scratch, "binary", 0)});
    }
    return valued;
}

LogicalParadoxVerdict is_logical_pps_paradox(const PPSExperiment& e,
                                             const std::vector<Op>& family) {
    LogicalParadoxVerdict verdict;
    if (std::abs(e.post.dot(e.pre)) < 1e-12) return verdict;

    const auto dim = e.pre.size();
    PPSExperiment scratch{e.pre, e.post, {}};
    for (const auto& p : family) {
        scratch.measurements["binary"] = {p, Op::Identity(dim, dim) - p};
        const double v = abl_probability(scratch, "binary", 0);
        if (std::abs(v) > 1e-9 && std::abs(v - 1.0) > 1e-9) return verdict;
    }

    const auto rep = algebraic_conditions(abl_closure(e, family));
    if (!rep.range_ok || !rep.boundary_ok || !rep.additivity_ok) {
        verdict.logical = true;
        verdict.violated = rep.violation;
    }
    return verdict;
}

std::vector<std::pair<std::size_t, double>> anomalous_weak_values(
    const PPSExperiment& e, const std::vector<Op>& family) {
    std::vector<std::pair<std::size_t, double>> out;
    for (std::size_t i = 0; i < family.size(); ++i) {
        const double w = weak_value(family[i], e.pre, e.post);
        if (w < -1e-9 || w > 1.0 + 1e-9) out.push_back({i, w});
    }
    return out;
}

namespace {

Op kron2(const Op& a, const Op& b) {
    Op r(a.rows() * b.rows(), a.cols() * b.cols());
    for (Eigen::Index i = 0; i < a.rows(); ++i)
        for (Eigen::Index j = 0; j < a.cols(); ++j)
            r.block(i * b.rows(), j * b.cols(), b.rows(), b.cols()) = a(i, j) * b;
    return r;
}

Ket kron2v(const Ket& a, const Ket& b) {
    Ket r(a.size() * b.size());
    for (Eigen::Index i = 0; i < a.size(); ++i)
        for (Eigen::Index j = 0; j < b.size(); ++j)
            r(i * b.size() + j) = a(i) * b(j);
    return r;
}

Op pauli3(const std::string& word) {
    using namespace std::complex_literals;
    auto single = [](char c) {
        Op m(2, 2);
        switch (c) {
            case 'X': m << 0, 1, 1, 0; break;
            case 'Y': m << 0, -1i, 1i, 0; break;
            case 'Z': m << 1, 0, 0, -1; break;
            default:  m << 1, 0, 0, 1; break;
        }
        return m;
    };
    return kron2(kron2(single(word[0]), single(word[1])), single(word[2]));
}

} // namespace

std::map<std::string, PPSExperiment> paradox_gallery() {
    std::map<std::string, PPSExperiment> gallery;

    { // Three boxes, one ball: opening box 1 or box 2 always finds it.
        const double s3 = std::sqrt(3.0);
        Ket pre(3), post(3);
        pre << 1 / s3, 1 / s3, 1 / s3;
        post << 1 / s3, 1 / s3, -1 / s3;
        Ket b1(3), b2(3), b3(3);
        b1 << 1, 0, 0;
        b2 << 0, 1, 0;
        b3 << 0, 0, 1;
        const Op P1 = projector(b1), P2 = projector(b2), P3 = projector(b3);
        PPSExperiment e;
        e.pre = pre;
        e.post = post;
        e.measurements["M1"] = {P1, Op::Identity(3, 3) - P1};
        e.measurements["M2"] = {P2, Op::Identity(3, 3) - P2};
        e.measurements["M1_fine"] = {P1, P2, P3}; // which-box: paradox disappears
        gallery.emplace("three_box", std::move(e));
    }

    { // Cheshire cat: photon path (L/R) and polarization (H/V), basis LH,LV,RH,RV.
        const double s2 = std::sqrt(2.0);
        Ket pre(4), post(4);
        pre << 1 / s2, 0, 1 / s2, 0;   // (|L> + |R>) |H> / sqrt2
        post << 1 / s2, 0, 0, 1 / s2;  // (|LH> + |RV>) / sqrt2
        Ket H(2), V(2), plus(2), minus(2), L(2), R(2);
        H << 1, 0;
        V << 0, 1;
        plus << 1 / s2, 1 / s2;
        minus << 1 / s2, -1 / s2;
        L << 1, 0;
        R << 0, 1;
        const Op I2 = Op::Identity(2, 2);
        PPSExperiment e;
        e.pre = pre;
        e.post = post;
        e.measurements["path"] = {kron2(projector(L), I2), kron2(projector(R), I2)};
        e.measurements["path_spin"] = {
            kron2(projector(L), projector(plus)), kron2(projector(L), projector(minus)),
            kron2(projector(R), projector(plus)), kron2(projector(R), projector(minus))};
        gallery.emplace("cheshire", std::move(e));
    }

    { // Quantum pigeonhole: three particles, two boxes, no pair shares a box.
        const double s2 = std::sqrt(2.0);
        Ket px(2), py(2);
        px << 1 / s2, 1 / s2;
        py << 1 / s2, std::complex<double>(0, 1 / s2);
        PPSExperiment e;
        e.pre = kron2v(kron2v(px, px), px);
        e.post = kron2v(kron2v(py, py), py);
        const Op I8 = Op::Identity(8, 8);
        // Explicit Op return: a deduced Eigen expression would dangle.
        auto sameBox = [&](const std::string& word) -> Op {
            return 0.5 * (I8 + pauli3(word));
        };
        e.measurements["same12"] = {sameBox("ZZI"), I8 - sameBox("ZZI")};
        e.measurements["same13"] = {sameBox("ZIZ"), I8 - sameBox("ZIZ")};
        e.measurements["same23"] = {sameBox("IZZ"), I8 - sameBox("IZZ")};
        gallery.emplace("pigeonhole", std::move(e));
    }

    return gallery;
}

ThreeQubitSquare three_qubit_square() {
    ThreeQubitSquare sq;
    sq.labels = {"ZIZ", "ZZI", "IZZ", "XIX", "XXI", "IXX", "YIY", "YYI", "IYY"};
    for (int r = 0; r < 3; ++r)
        for (int c = 0; c < 3; ++c)
            sq.grid[r][c] = pauli3(sq.labels[3 * r + c]);
    for (int r = 0; r < 3; ++r)
        sq.row_products[r] = sq.grid[r][0] * sq.grid[r][1] * sq.grid[r][2];
    for (int c = 0; c < 3; ++c)
        sq.col_products[c] = sq.grid[0][c] * sq.grid[1][c] * sq.grid[2][c];

    const auto gallery = paradox_gallery();
    const auto& pigeon = gallery.at("pigeonhole");
    sq.pre = pigeon.pre;
    sq.post = pigeon.post;

    const Op I8 = Op::Identity(8, 8);
    PPSExperiment scratch{sq.pre, sq.post, {}};
    for (int c = 0; c < 3; ++c) {
        const Op plus = 0.5 * (I8 + sq.grid[0][c]);
        scratch.measurements["binary"] = {plus, I8 - plus};
        const double pPlus = abl_probability(scratch, "binary", 0);
        sq.forced_values[c] = pPlus > 0.5 ? 1.0 : -1.0;
    }
    sq.contradiction =
        "ZIZ * ZZI * IZZ = +I, yet the ABL rule forces each factor to -1; the "
        "contradiction is confined to the context {ZIZ, ZZI, IZZ}";
    return sq;
}

} // namespace ctx
