#include "ellkit/constants.hpp"

namespace ellkit {

Rat BogomolovTable::lookup(long dim, const Rat& eta) const {
    auto it = entries.find({dim, eta});
    if (it != entries.end()) return it->second;
    if (fallback) return *fallback;
    throw std::invalid_argument("BogomolovTable: no constant for dim " + std::to_string(dim) +
                                ", eta " + to_string(eta) + " and no default");
}

void CurveParams::validate() const {
    if (g < 2) throw std::invalid_argument("CurveParams: g >= 2 required");
    if (s < 0) throw std::invalid_argument("CurveParams: s >= 0 required");
    if (deg_c < 1) throw std::invalid_argument("CurveParams: deg C >= 1 required");
    if (vojta_c1 <= 0) throw std::invalid_argument("CurveParams: vojta_c1 must be positive");
    if (c_double_prime <= 0) throw std::invalid_argument("CurveParams: c'' must be positive");
}

RatInterval bogomolov_eps(const Int& deg, long cod, const Rat& eta, const Rat& c, unsigned bits) {
    if (deg < 1) throw std::invalid_argument("bogomolov_eps: deg >= 1");
    if (cod < 1) throw std::invalid_argument("bogomolov_eps: cod >= 1");
    if (eta < 0) throw std::invalid_argument("bogomolov_eps: eta >= 0");
    if (c <= 0) throw std::invalid_argument("bogomolov_eps: c > 0");
    Rat expo = -(Rat(1) / Rat(2 * cod)) - eta;
    return pow_interval(Rat(deg), expo, bits) * c;
}

EssentialMinBounds essential_min_lower_bounds(const CurveParams& p, const Rat& eta, const Int& a, long g) {
    if (a < 1) throw std::invalid_argument("essential_min_lower_bounds: a >= 1");
    if (eta < 0) throw std::invalid_argument("essential_min_lower_bounds: eta >= 0");
    long n = 2 * (g + p.s) - 3;
    EssentialMinBounds out;
    out.a0 = iroot_floor(a, static_cast<unsigned long>(2 * n));

    // eps1(C,eta) = c(2,E,eta) / (9 g deg C)^(1/2+eta)
    Rat c2e = p.bogomolov_c.lookup(2, eta);
    RatInterval denom1 = pow_interval(Rat(Int(9 * g) * p.deg_c), Rat(1, 2) + eta);
    out.eps1_C_eta = RatInterval(c2e) / denom1;

    // eps2(C,eta) = c(g,E,eta) / (12 g^2 deg C)^(1/(2(g-1))+eta)
    Rat cge = p.bogomolov_c.lookup(g, eta);
    RatInterval denom2 = pow_interval(Rat(Int(12 * g * g) * p.deg_c), Rat(1, 2 * (g - 1)) + eta);
    out.eps2_C_eta = RatInterval(cge) / denom2;

    out.eps1_bound = out.eps1_C_eta / pow_interval(Rat(a), Rat(1) + 2 * eta);
    Rat expo2 = Rat(1, g - 1) - Rat(8 * (g + p.s) * (g - 1)) * eta;
    out.eps2_bound = out.eps2_C_eta * pow_interval(Rat(out.a0), expo2);
    return out;
}

namespace {

// Integer ceiling of an enclosed value. Exact when the enclosure decides it;
// otherwise the upper endpoint wins: a larger cutoff keeps every downstream
// cover statement true (more morphisms in the union, smaller radii).
Int ceil_of_interval(const RatInterval& v) {
    Int lo = ceil_rat(v.lo), hi = ceil_rat(v.hi);
    return lo == hi ? lo : hi;
}

}  // namespace

ShrinkingRadiusParams shrinking_radius_params(const CurveParams& p, const RatInterval& eps4, const RatInterval& eps2) {
    ShrinkingRadiusParams out;
    out.n = 2 * (p.g + p.s) - 3;
    Rat gs2 = Rat((p.g + p.s) * (p.g + p.s));
    out.delta1 = interval_min(eps4, eps2) / gs2;
    if (out.delta1.lo <= 0) throw std::domain_error("shrinking_radius_params: delta1 must be positive");
    Int c = ceil_of_interval(RatInterval(p.K2) / out.delta1);
    Int base = std::max(Int(2), Int(c * c));
    out.M_prime = pow_int(base, static_cast<unsigned long>(out.n));
    Rat expo = -(Rat(1) + Rat(1, 2 * out.n));
    out.delta = out.delta1 * pow_interval(Rat(out.M_prime), expo);
    return out;
}

Int height_cutoff(const Rat& K, const Rat& eps, long n) {
    if (eps <= 0) throw std::invalid_argument("height_cutoff: eps > 0");
    Int c = ceil_rat(K / eps);
    Int base = std::max(Int(2), Int(c * c));
    return pow_int(base, static_cast<unsigned long>(n));
}

FinitenessThresholds finiteness_thresholds(const CurveParams& p, const Rat& eta_choice, const Rat& eps1_input) {
    FinitenessThresholds out;
    long g = p.g, s = p.s;
    out.eta0 = Rat(1) / Rat(16 * (g + s) * (g - 1) * (g - 1));
    if (eta_choice > out.eta0) throw std::invalid_argument("finiteness_thresholds: eta_choice > eta0");
    if (p.K1 <= 0) throw std::invalid_argument("finiteness_thresholds: K1 > 0 required");

    EssentialMinBounds em = essential_min_lower_bounds(p, eta_choice, Int(1), g);
    // m = max(2, (K1/eps2(C,eta))^((g-1)/(1 - 8(g+s)(g-1)^2 eta)))
    Rat expo_m = Rat(g - 1) / (Rat(1) - Rat(8 * (g + s) * (g - 1) * (g - 1)) * eta_choice);
    RatInterval ratio = RatInterval(p.K1) / em.eps2_C_eta;
    out.m = interval_max(RatInterval(Rat(2)), pow_interval(ratio, expo_m));

    // eps(C) = min(eps1(C,eta0), eps2(C,eta0))
    EssentialMinBounds em0 = essential_min_lower_bounds(p, out.eta0, Int(1), g);
    out.eps1_C_eta0 = em0.eps1_C_eta;
    out.eps2_C_eta0 = em0.eps2_C_eta;
    out.eps_C = interval_min(out.eps1_C_eta0, out.eps2_C_eta0);

    // eps4 = min(eps1, K1/g, (eps(C)/(g K1))^(8(g+s)g))
    RatInterval third = pow_interval(out.eps_C / (Rat(g) * p.K1), Rat(8 * (g + s) * g));
    out.eps4 = interval_min(RatInterval(eps1_input),
                            interval_min(RatInterval(p.K1 / Rat(g)), third));
    return out;
}

Rat projection_K4(const CurveParams& p, const Rat& eps) {
    if (p.c_p <= 0 || p.min_p_norm <= 0)
        throw std::invalid_argument("projection_K4: c_p and min||p_i|| must be positive");
    Rat second = Rat(p.g) * (p.K3 + eps) / (p.c_p * p.min_p_norm);
    return Rat(p.g + p.s) * std::max(Rat(1), second);
}

VojtaEpsSuite vojta_eps_suite(const CurveParams& p) {
    if (p.vojta_c1 <= 0) throw std::invalid_argument("vojta_eps_suite: c1 > 0 required");
    VojtaEpsSuite out;
    Rat two_g = Rat(pow_int(Int(2), static_cast<unsigned long>(p.g)));
    out.eps1_remark = Rat(1) / (two_g * p.vojta_c1);

    Rat eps0_prime = p.c_p * p.min_p_norm / (Rat(96 * (p.s + 1)) * p.vojta_c1);
    out.eps2_vojta = std::min(p.eps_p, eps0_prime);

    Rat c2 = p.c_p * p.c_p;  // sqrt(c2) is stored; square back (rounded down)
    Rat num = std::min(Rat(1), c2) * p.min_p_norm * p.min_p_norm;
    Rat den = Rat(256 * p.g) * Rat((p.s + 1) * (p.s + 1)) * p.max_p_norm * p.vojta_c1;
    out.eps2_prime_remark = num / den;
    return out;
}

DegreeBounds degree_bounds(long g, const Int& a, const Int& a0, const Int& deg_c) {
    if (a < 1 || a0 < 1) throw std::invalid_argument("degree_bounds: a, a0 >= 1");
    DegreeBounds out;
    out.deg_phi_c = Int(6 * g) * a * a * deg_c;
    out.deg_d = Int(12 * g * g) * pow_int(a0, static_cast<unsigned long>(2 * (g - 2))) *
                pow_int(a, static_cast<unsigned long>(2 * (g - 1))) * deg_c;
    return out;
}

HelpingCurveMatrices helping_curve_matrices(const GaussReducedForm& form, std::size_t g, long n) {
    const Morphism& phi = form.phi;
    if (phi.r != 2) throw std::invalid_argument("helping_curve_matrices: rank 2 required");
    if (phi.ring.is_order()) throw std::invalid_argument("helping_curve_matrices: integer ring required");
    if (phi.g != g) throw std::invalid_argument("helping_curve_matrices: column count mismatch");
    if (n < 1) throw std::invalid_argument("helping_curve_matrices: n >= 1");

    HelpingCurveMatrices out;
    const Int& a = form.a.x;
    out.a0 = iroot_floor(a, static_cast<unsigned long>(2 * n));

    out.Phi = QMat(g, g);
    out.A = QMat::identity(g);
    out.A0 = QMat::identity(g);
    out.L = QMat::identity(g);
    for (std::size_t j = 0; j < g; ++j)
        for (std::size_t i = 0; i < 2; ++i) out.Phi.at(i, j) = Rat(out.a0 * phi.at(i, j).x);
    for (std::size_t j = 2; j < g; ++j) {
        out.Phi.at(j, j) = 1;
        out.A.at(j, j) = Rat(a);
        out.A0.at(j, j) = Rat(out.a0);
        out.L.at(0, j) = Rat(phi.at(0, j).x);
        out.L.at(1, j) = Rat(phi.at(1, j).x);
    }

    QMat rhs = (out.A0.inverse() * out.L * out.A.inverse()) * Rat(out.a0 * a);
    out.identity_verified = (out.Phi == rhs);
    if (!out.identity_verified)
        throw std::logic_error("helping_curve_matrices: factorization identity failed");
    return out;
}

CardinalityBound cardinality_bound(const CurveParams& p, const Int& M) {
    if (M < 1) throw std::invalid_argument("cardinality_bound: M >= 1");
    CardinalityBound out;
    out.theta_c = p.c_double_prime * Rat(pow_int(p.deg_c, static_cast<unsigned long>(p.g)));
    Int threeg = Int(3 * p.g);
    out.cap = Rat(pow_int(threeg, static_cast<unsigned long>(2 * p.g + 1))) *
              Rat(pow_int(M, static_cast<unsigned long>(2 * p.g + 3))) * out.theta_c;
    return out;
}

EffectiveRadiusParams effective_radius_params(const CurveParams& p, std::optional<RatInterval> eps_c_override) {
    if (p.K0 <= 0) throw std::invalid_argument("effective_radius_params: K0 > 0 required");
    long g = p.g;
    RatInterval eps_c;
    if (eps_c_override) {
        eps_c = *eps_c_override;
    } else {
        // s = 0 surrogates throughout
        CurveParams q = p;
        q.s = 0;
        Rat eta0 = Rat(1) / Rat(16 * g * (g - 1) * (g - 1));
        EssentialMinBounds em0 = essential_min_lower_bounds(q, eta0, Int(1), g);
        eps_c = interval_min(em0.eps1_C_eta, em0.eps2_C_eta);
    }

    EffectiveRadiusParams out;
    Rat gK0 = Rat(g) * p.K0;
    RatInterval third = pow_interval(eps_c / gK0, Rat(8 * g * g));
    RatInterval inner =
        interval_min(RatInterval(Rat(1)), interval_min(RatInterval(p.K0 / Rat(g)), third));
    out.delta1 = inner / Rat(g);
    Int c = ceil_of_interval(RatInterval(p.K0) / out.delta1);
    Int base = std::max(Int(2), Int(c * c));
    out.M = pow_int(base, static_cast<unsigned long>(2 * g - 3));

    // eps <= g^(-4g) min(1, K0^-1)^(4g) min(1, K0, (eps(C)/(g K0))^(8g^2))^(4g)
    Rat g4g = Rat(pow_int(Int(g), static_cast<unsigned long>(4 * g)));
    Rat min_inv = std::min(Rat(1), Rat(Rat(1) / p.K0));
    RatInterval last =
        interval_min(RatInterval(Rat(1)), interval_min(RatInterval(p.K0), third));
    out.eps = pow_interval(last, Rat(4 * g)) * (pow_rat(min_inv, 4 * g) / g4g);
    return out;
}

EffectiveBounds compute_bounds(const CurveParams& p) {
    p.validate();
    EffectiveBounds out;
    long g = p.g, s = p.s;
    out.n = 2 * (g + s) - 3;

    VojtaEpsSuite vs = vojta_eps_suite(p);
    out.eps1_remark = {RatInterval(vs.eps1_remark), "1/(2^g c1)"};
    out.eps2_vojta = {RatInterval(vs.eps2_vojta), "min(eps_p, c_p min||p||/(96(s+1)c1))"};
    out.eps2_prime_remark = {RatInterval(vs.eps2_prime_remark),
                             "min(1,c_p^2) min||p||^2/(2^8 g (s+1)^2 max||p|| c1)"};

    FinitenessThresholds pb = finiteness_thresholds(p, Rat(1) / Rat(16 * (g + s) * (g - 1) * (g - 1)), vs.eps1_remark);
    out.eta0 = {RatInterval(pb.eta0), "1/(2^4 (g+s)(g-1)^2)"};
    out.m = {pb.m, "max(2, (K1/eps2(C,eta0))^((g-1)/(1-8(g+s)(g-1)^2 eta0)))"};
    out.eps1_C_eta = {pb.eps1_C_eta0, "c(2,E,eta0)/(9 g degC)^(1/2+eta0)"};
    out.eps2_C_eta = {pb.eps2_C_eta0, "c(g,E,eta0)/(12 g^2 degC)^(1/(2(g-1))+eta0)"};
    out.eps_bogomolov = {bogomolov_eps(p.deg_c, g - 1, pb.eta0, p.bogomolov_c.lookup(g, pb.eta0)),
                         "c(g,E,eta0) degC^(-1/(2(g-1))-eta0)"};
    out.eps4 = {pb.eps4, "min(eps1, K1/g, (eps(C)/(g K1))^(8(g+s)g))"};

    ShrinkingRadiusParams tp = shrinking_radius_params(p, pb.eps4, RatInterval(vs.eps2_vojta));
    out.delta1 = {tp.delta1, "min(eps4, eps2)/(g+s)^2"};
    out.M_prime = {RatInterval(Rat(tp.M_prime)), "max(2, ceil(K2/delta1)^2)^n"};
    out.delta = {tp.delta, "delta1 M'^(-1-1/(2n))"};

    out.K4 = {RatInterval(projection_K4(p, p.eps_p)), "(g+s) max(1, g(K3+eps)/(c_p min||p||)) at eps=eps_p"};

    EffectiveRadiusParams cp = effective_radius_params(p);
    out.M = {RatInterval(Rat(cp.M)), "max(2, ceil(K0/delta1')^2)^(2g-3)"};
    out.effective_eps = {cp.eps, "g^(-4g) min(1,1/K0)^(4g) min(1, K0, (eps(C)/(g K0))^(8g^2))^(4g)"};

    CardinalityBound cb = cardinality_bound(p, cp.M);
    out.cardinality_cap = {RatInterval(cb.cap), "(3g)^(2g+1) M^(2g+3) c'' degC^g"};
    return out;
}

void fill_ret_constants(CurveParams& p, const MWModel& model,
                        const std::vector<std::size_t>& p_indices) {
    PerturbationConstants rc = c1_constant(model, p_indices);
    Rat min_nsq, max_nsq;
    for (std::size_t k = 0; k < p_indices.size(); ++k) {
        Rat nsq = model.gram.at(p_indices[k], p_indices[k]);
        if (k == 0) {
            min_nsq = max_nsq = nsq;
        } else {
            min_nsq = std::min(min_nsq, nsq);
            max_nsq = std::max(max_nsq, nsq);
        }
    }
    p.min_p_norm = sqrt_lower(min_nsq);
    p.max_p_norm = sqrt_upper(max_nsq);
    p.c_p = sqrt_lower(rc.c2);
    p.eps_p = rc.eps0;
    p.s = static_cast<long>(p_indices.size());
}

}  // namespace ellkit
