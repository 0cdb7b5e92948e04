#pragma once

#include <algorithm>
#include <map>
#include <string>
#include <vector>

#include "spectra/report.hpp"
#include "spectra/torsion.hpp"

namespace spectra {

/// An indecomposable injective over a finite ring: the character module of
/// one local factor, indexed like spec(R).
struct IndecInjective {
    FinModule module;
    std::size_t point = 0;  ///< index into spec(R) of the host factor
    std::string label;
};

namespace detail {

/// The local factor S = eR as a module over Z/n, n = char S.
inline FinModule factor_as_cyclic_group_module(const LocalFactor& f, const RingPtr& Zn) {
    const auto& S = *f.factor_ring;
    std::size_t m = S.size();
    std::vector<Elem> add(m * m), action(Zn->size() * m);
    for (Elem a = 0; a < m; ++a) {
        for (Elem b = 0; b < m; ++b) add[a * m + b] = S.add(a, b);
        Elem s = S.zero();
        for (Elem k = 0; k < Zn->size(); ++k) {
            action[k * m + a] = s;
            s = S.add(s, a);
        }
    }
    // S stores zero at an arbitrary index; FinModule wants it at 0
    if (S.zero() != 0) fail("local factor zero is not element 0 (internal invariant)");
    return FinModule(Zn, m, std::move(add), std::move(action));
}

}  // namespace detail

/// Hom_Z(S, Q/Z) for each local factor S, with (r·χ)(x) = χ(e r x).
inline std::vector<IndecInjective> indec_injectives(const RingPtr& R, const Bounds& bounds = {}) {
    std::vector<IndecInjective> out;
    auto factors = local_decomposition(R);
    auto primes = spec(R);
    for (std::size_t i = 0; i < factors.size(); ++i) {
        const auto& f = factors[i];
        const auto& S = *f.factor_ring;
        auto Zn = make_ring(RingDescription::zmod(static_cast<std::uint32_t>(S.characteristic())));
        auto group = detail::factor_as_cyclic_group_module(f, Zn);
        auto chars = all_homs(group, free_module(Zn, 1), bounds);
        std::map<std::vector<Elem>, Elem> index;
        // zero character first
        std::sort(chars.begin(), chars.end());
        for (std::size_t k = 0; k < chars.size(); ++k) index.emplace(chars[k], static_cast<Elem>(k));
        std::size_t n = chars.size();
        std::vector<Elem> add(n * n), action(R->size() * n);
        std::vector<Elem> sum(S.size());
        for (std::size_t a = 0; a < n; ++a) {
            for (std::size_t b = 0; b < n; ++b) {
                for (Elem x = 0; x < S.size(); ++x) sum[x] = Zn->add(chars[a][x], chars[b][x]);
                add[a * n + b] = index.at(sum);
            }
            for (Elem r = 0; r < R->size(); ++r) {
                Elem er = f.projection[r];
                for (Elem x = 0; x < S.size(); ++x) sum[x] = chars[a][S.mul(er, x)];
                action[r * n + a] = index.at(sum);
            }
        }
        std::string label = "E" + primes[i].to_string();
        out.push_back({FinModule(R, n, std::move(add), std::move(action), label), i, label});
    }
    return out;
}

/// Every R-linear map from every ideal into E extends to R.
inline Check baer_check(const FinModule& E, const Bounds& bounds = {}) {
    auto c = Check::make("Baer criterion", "injectivity: maps from ideals extend to R");
    const auto& R = E.ring();
    auto ring_module = free_module(R, 1, bounds);
    for (auto& I : enumerate_ideals(R, bounds)) {
        auto members = I.members().members();
        auto Imod = submodule(ring_module, I.members());
        for_each_hom(
            Imod, E,
            [&](const std::vector<Elem>& h) {
                for (Elem e = 0; e < E.size(); ++e) {
                    bool ok = true;
                    for (std::size_t k = 0; k < members.size() && ok; ++k)
                        ok = h[k] == E.act(static_cast<Elem>(members[k]), e);
                    if (ok) return true;
                }
                c.fail_with(E.label() + ": a map " + I.to_string() + " -> E does not extend");
                return true;
            },
            bounds);
    }
    return c;
}

/// No endomorphism idempotent other than 0 and the identity.
inline Check indecomposable_check(const FinModule& E, const Bounds& bounds = {}) {
    auto c = Check::make("indecomposable", "no nontrivial idempotent endomorphism");
    if (E.is_zero()) {
        c.fail_with("zero module");
        return c;
    }
    for_each_hom(
        E, E,
        [&](const std::vector<Elem>& h) {
            bool zero = true, id = true, idem = true;
            for (Elem x = 0; x < E.size(); ++x) {
                zero = zero && h[x] == 0;
                id = id && h[x] == x;
                idem = idem && h[h[x]] == h[x];
            }
            if (idem && !zero && !id) c.fail_with(E.label() + ": nontrivial idempotent endomorphism");
            return true;
        },
        bounds);
    return c;
}

/// P(E): the sum of the annihilators of the nonzero elements.
inline PrimeIdeal p_of_e(const FinModule& E) {
    auto P = zero_ideal(E.ring());
    for (Elem x = 1; x < E.size(); ++x) P = ideal_sum(P, annihilator(E, x));
    auto prime = PrimeIdeal::certify(P);
    if (!prime) fail("P(E) = " + P.to_string() + " is not prime");
    return *prime;
}

/// E ∈ D^fg(I): no nonzero x is killed by a power I^n, n >= 1. Powers
/// decrease, so the stable power decides.
inline bool dfg_membership(const FinModule& E, const Ideal& I) {
    auto S = stable_power(I);
    for (Elem x = 1; x < E.size(); ++x)
        if (S.subset_of(annihilator(E, x))) return false;
    return true;
}

/// D^fg(I) as a set of injective indices.
inline ElementSet dfg_set(const std::vector<IndecInjective>& inj, const Ideal& I) {
    ElementSet s(inj.size());
    for (std::size_t i = 0; i < inj.size(); ++i)
        if (dfg_membership(inj[i].module, I)) s.insert(i);
    return s;
}

inline bool indistinguishable(const FinModule& E1, const FinModule& E2, const Bounds& bounds = {}) {
    if (E1.ring() != E2.ring()) fail("indistinguishable: injectives over different rings");
    for (auto& I : enumerate_ideals(E1.ring(), bounds))
        if (dfg_membership(E1, I) != dfg_membership(E2, I)) return false;
    return true;
}

/// (M) = {E : Hom(M, E) != 0}, as injective indices.
inline ElementSet hom_nonvanishing_set(const FinModule& M, const std::vector<IndecInjective>& inj,
                                       const Bounds& bounds = {}) {
    ElementSet s(inj.size());
    for (std::size_t i = 0; i < inj.size(); ++i)
        if (!hom_is_zero(M, inj[i].module, bounds)) s.insert(i);
    return s;
}

/// [M] = {E : Hom(M, E) = 0}.
inline ElementSet hom_vanishing_set(const FinModule& M, const std::vector<IndecInjective>& inj,
                                    const Bounds& bounds = {}) {
    return hom_nonvanishing_set(M, inj, bounds).complement();
}

/// {I : Hom(R/I, E_P) = 0 for every P in the set}.
inline bool hom_vanishing_filter_contains(const Ideal& I, const std::vector<IndecInjective>& inj,
                                          const ElementSet& p_set, const Bounds& bounds = {}) {
    auto M = cyclic_module(I, bounds);
    for (auto i : p_set.members())
        if (!hom_is_zero(M, inj[i].module, bounds)) return false;
    return true;
}

/// φ: dual-open V of spec -> {E : P(E) ∈ V}.
inline ElementSet lll_phi(const std::vector<IndecInjective>& inj, const std::vector<PrimeIdeal>& primes,
                          const ElementSet& V) {
    ElementSet q(inj.size());
    for (std::size_t i = 0; i < inj.size(); ++i)
        if (V.contains(index_of_prime(primes, p_of_e(inj[i].module)))) q.insert(i);
    return q;
}

/// ψ: dual-open Q of injfg -> {P(E) : E ∈ Q}.
inline ElementSet lll_psi(const std::vector<IndecInjective>& inj, const std::vector<PrimeIdeal>& primes,
                          const ElementSet& Q) {
    ElementSet v(primes.size());
    for (auto i : Q.members()) v.insert(index_of_prime(primes, p_of_e(inj[i].module)));
    return v;
}

/// Opens of the dual of injfg: the lattice generated by the sets V^fg(I).
inline std::vector<ElementSet> injfg_dual_opens(const std::vector<IndecInjective>& inj, const RingPtr& R,
                                                const Bounds& bounds = {}) {
    std::vector<ElementSet> opens{ElementSet(inj.size())};
    auto add = [&](const ElementSet& s) {
        for (auto& o : opens)
            if (o == s) return false;
        opens.push_back(s);
        return true;
    };
    for (auto& I : enumerate_ideals(R, bounds)) add(dfg_set(inj, I).complement());
    bool grew = true;
    while (grew) {
        grew = false;
        auto snapshot = opens;
        for (auto& a : snapshot)
            for (auto& b : snapshot) {
                grew = add(a | b) || grew;
                grew = add(a & b) || grew;
            }
    }
    std::sort(opens.begin(), opens.end());
    return opens;
}

/// spec as a retract of injfg: α(P) = E_P, β(E) = P(E).
inline std::vector<Check> retract_check_impl(const RingPtr& R, const std::vector<IndecInjective>& inj,
                                             const std::vector<PrimeIdeal>& primes,
                                             const std::vector<Ideal>& ideals,
                                             const std::vector<ElementSet>& dfg) {
    auto beta_alpha = Check::make("beta∘alpha = id", "P(E_P) = P");
    for (std::size_t p = 0; p < primes.size(); ++p)
        if (!(p_of_e(inj[p].module) == primes[p])) beta_alpha.fail_with("P(E_P) != P for P=" + primes[p].to_string());

    std::vector<std::size_t> beta(inj.size());
    for (std::size_t i = 0; i < inj.size(); ++i) beta[i] = index_of_prime(primes, p_of_e(inj[i].module));

    auto beta_cont = Check::make("beta continuous", "preimage of D(I) is a union of basic opens D^fg(J)");
    auto alpha_cont = Check::make("alpha continuous", "preimage of D^fg(I) is a union of opens D(J)");
    std::vector<ElementSet> zariski;
    for (auto& J : ideals) zariski.push_back(v_set(J).points().complement());
    auto dense = Check::make("spec dense", "every nonempty basic open meets alpha(spec)");
    ElementSet image(inj.size());
    for (std::size_t p = 0; p < primes.size(); ++p) image.insert(p);
    for (std::size_t a = 0; a < ideals.size(); ++a) {
        auto D = v_set(ideals[a]).points().complement();
        ElementSet pre(inj.size());
        for (std::size_t i = 0; i < inj.size(); ++i)
            if (D.contains(beta[i])) pre.insert(i);
        ElementSet covered(inj.size());
        for (auto& b : dfg)
            if (b.subset_of(pre)) covered |= b;
        if (covered != pre) beta_cont.fail_with("I=" + ideals[a].to_string());
        ElementSet alpha_pre(primes.size());
        for (std::size_t p = 0; p < primes.size(); ++p)
            if (dfg[a].contains(p)) alpha_pre.insert(p);
        ElementSet alpha_cov(primes.size());
        for (auto& z : zariski)
            if (z.subset_of(alpha_pre)) alpha_cov |= z;
        if (alpha_cov != alpha_pre) alpha_cont.fail_with("I=" + ideals[a].to_string());
        if (!dfg[a].empty() && (dfg[a] & image).empty()) dense.fail_with("D^fg(" + ideals[a].to_string() + ")");
    }
    (void)R;
    return {beta_alpha, alpha_cont, beta_cont, dense};
}

/// The checks of the fg-topology suite for one ring.
inline std::vector<Check> injective_suite(const RingPtr& R, const Bounds& bounds = {}) {
    std::vector<Check> out;
    auto inj = indec_injectives(R, bounds);
    auto primes = spec(R);
    auto ideals = enumerate_ideals(R, bounds);

    auto baer = Check::make("Baer certified", "indecomposable injectives from character modules");
    auto indec = Check::make("indecomposable", "no nontrivial idempotent endomorphism");
    for (auto& E : inj) {
        auto b = baer_check(E.module, bounds);
        for (auto& w : b.witnesses) baer.fail_with(w);
        auto d = indecomposable_check(E.module, bounds);
        for (auto& w : d.witnesses) indec.fail_with(w);
    }
    out.push_back(baer);
    out.push_back(indec);

    auto alpha = Check::make("alpha injective", "distinct primes give non-isomorphic injectives");
    for (std::size_t i = 0; i < inj.size(); ++i)
        for (std::size_t j = 0; j < i; ++j)
            if (is_isomorphic(inj[i].module, inj[j].module, bounds))
                alpha.fail_with(inj[i].label + " ≅ " + inj[j].label);
    out.push_back(alpha);

    std::vector<ElementSet> dfg;
    for (auto& I : ideals) dfg.push_back(dfg_set(inj, I));

    auto products = Check::make("D^fg(I) ∩ D^fg(J) = D^fg(IJ)", "basic opens of the fg-topology");
    for (std::size_t a = 0; a < ideals.size(); ++a)
        for (std::size_t b = 0; b < ideals.size(); ++b)
            if ((dfg[a] & dfg[b]) != dfg_set(inj, ideal_product(ideals[a], ideals[b])))
                products.fail_with("I=" + ideals[a].to_string() + " J=" + ideals[b].to_string());
    out.push_back(products);

    auto remark = Check::make("fg opens restricted to spec", "D^fg(I)∩spec = D(I), V^fg(I)∩spec = V(I), D^fg(I) = [R/I]");
    for (std::size_t a = 0; a < ideals.size(); ++a) {
        auto V = v_set(ideals[a]).points();
        ElementSet restricted(primes.size()), vfg(primes.size());
        for (std::size_t i = 0; i < inj.size(); ++i) {
            auto p = index_of_prime(primes, p_of_e(inj[i].module));
            (dfg[a].contains(i) ? restricted : vfg).insert(p);
        }
        if (restricted != V.complement()) remark.fail_with("D^fg(" + ideals[a].to_string() + ") ∩ spec != D(I)");
        if (vfg != V) remark.fail_with("V^fg(" + ideals[a].to_string() + ") ∩ spec != V(I)");
        if (dfg[a] != hom_vanishing_set(cyclic_module(ideals[a], bounds), inj, bounds))
            remark.fail_with("D^fg(" + ideals[a].to_string() + ") != [R/I]");
    }
    out.push_back(remark);

    auto special = Check::make("specialization via P(E)", "E ∈ V^fg(I) iff E_P(E) ∈ V^fg(I)");
    auto indist = Check::make("indistinguishable from E_P(E)", "E and E_P(E) are topologically indistinguishable");
    for (auto& E : inj) {
        auto P = p_of_e(E.module);
        const auto& EP = inj[index_of_prime(primes, P)].module;
        for (auto& I : ideals)
            if (dfg_membership(E.module, I) != dfg_membership(EP, I))
                special.fail_with(E.label + " at " + I.to_string());
        if (!indistinguishable(E.module, EP, bounds)) indist.fail_with(E.label);
    }
    out.push_back(special);
    out.push_back(indist);

    auto retract = retract_check_impl(R, inj, primes, ideals, dfg);
    out.insert(out.end(), retract.begin(), retract.end());

    auto lll = Check::make("lattice bijection", "phi and psi are inverse bijections of the open-set lattices");
    auto spec_opens = FiniteThomason::all_subsets(R);
    auto inj_opens = injfg_dual_opens(inj, R, bounds);
    std::vector<ElementSet> images;
    for (auto& V : spec_opens) {
        auto Q = lll_phi(inj, primes, V.points());
        if (std::find(inj_opens.begin(), inj_opens.end(), Q) == inj_opens.end())
            lll.fail_with("phi(" + V.to_string() + ") is not open");
        if (lll_psi(inj, primes, Q) != V.points()) lll.fail_with("psi(phi(V)) != V for V=" + V.to_string());
        images.push_back(Q);
    }
    for (auto& Q : inj_opens)
        if (lll_phi(inj, primes, lll_psi(inj, primes, Q)) != Q) lll.fail_with("phi(psi(Q)) != Q");
    if (inj_opens.size() != spec_opens.size())
        lll.fail_with("lattice sizes differ: " + std::to_string(inj_opens.size()) + " vs " +
                      std::to_string(spec_opens.size()));
    out.push_back(lll);

    auto hom = Check::make("(M) = {E : P(E) ∈ supp M}", "Hom-vanishing sets against supports");
    for (auto& M : std::vector<FinModule>{free_module(R, 1, bounds)}) {
        auto expect = lll_phi(inj, primes, support_indices(M));
        if (hom_nonvanishing_set(M, inj, bounds) != expect) hom.fail_with(M.label());
    }
    for (auto& I : ideals) {
        auto M = cyclic_module(I, bounds);
        if (hom_nonvanishing_set(M, inj, bounds) != lll_phi(inj, primes, support_indices(M)))
            hom.fail_with(M.label());
    }
    out.push_back(hom);
    return out;
}

}  // namespace spectra
