// Copyright 2026 The phonolase authors
//
// Licensed under the Apache License, Version 2.0 (the "License");
// you may not use this file except in compliance with the License.
// You may obtain a copy of the License at
//
//     http://www.apache.org/licenses/LICENSE-2.0
//
// Unless required by applicable law or agreed to in writing, software
// distributed under the License is distributed on an "AS IS" BASIS,
// WITHOUT WARRANTIES OR CONDITIONS OF ANY KIND, either express or implied.
// See the License for the specific language governing permissions and
// limitations under the License.

#include "core/models.hpp"

#include <cmath>

namespace phl::models {

using hilbert::fock_destroy;
using hilbert::fock_number;
using hilbert::HilbertLayout;
using hilbert::identity;
using hilbert::SparseC;
using hilbert::tensor;
using hilbert::transition;

double effective_coupling(double eta, double omega) {
    if (eta < 0.0 || eta >= 1.0) throw std::invalid_argument("effective_coupling: eta in [0,1)");
    if (omega < 0.0) throw std::invalid_argument("effective_coupling: omega >= 0");
    return eta * omega * std::exp(-0.5 * eta * eta);
}

std::pair<double, double> squeezed_mode_couplings(double g, double r) {
    if (r < 0.0) throw std::invalid_argument("squeezed_mode_couplings: r >= 0");
    return {g * std::cosh(r), g * std::sinh(r)};
}

namespace {

// mode operator with an optional third-order Lamb-Dicke saturation factor:
// raise = a^dag (1 - eta^2/2 a^dag a), lower = its adjoint
std::pair<SparseC, bool> ld_raise(int n_max, double eta) {
    SparseC ad = fock_destroy(n_max).entries.adjoint();
    if (eta == 0.0) return {ad, false};
    SparseC sat(n_max, n_max);
    bool sign_change = false;
    sat.reserve(Eigen::VectorXi::Constant(n_max, 1));
    for (int n = 0; n < n_max; ++n) {
        double f = 1.0 - 0.5 * eta * eta * n;
        if (f < 0.0) sign_change = true;
        sat.insert(n, n) = f;
    }
    return {SparseC(ad * sat), sign_change};
}

HamiltonianModel assemble_two_ion(const ModelParams& p, int n_max, const SparseC& raise_h,
                                  const SparseC& raise_c, bool warn) {
    auto sp = transition(2, 1, 0);  // sigma+
    auto sm = sp.adjoint();
    auto i2 = identity(2);
    auto in = identity(n_max);

    auto full = [&](const OperatorMatrix& h, const OperatorMatrix& c, const SparseC& m) {
        return tensor({h, c, OperatorMatrix(HilbertLayout({n_max}), m)});
    };
    SparseC lower_h = raise_h.adjoint();
    SparseC lower_c = raise_c.adjoint();

    OperatorMatrix Hh = full(sp, i2, raise_h);
    OperatorMatrix Hm = full(sm, i2, lower_h);
    OperatorMatrix Cc = full(i2, sm, raise_c);
    OperatorMatrix Cm = full(i2, sp, lower_c);

    HamiltonianModel out;
    out.H = OperatorMatrix(Hh.layout, SparseC(p.g_h * (Hh.entries + Hm.entries) +
                                              p.g_c * (Cc.entries + Cm.entries)));
    out.jumps = {OperatorMatrix(Hh.layout, SparseC(std::sqrt(p.gamma_h) *
                                                   tensor({sm, i2, in}).entries)),
                 OperatorMatrix(Hh.layout, SparseC(std::sqrt(p.gamma_c) *
                                                   tensor({i2, sm, in}).entries))};
    out.ld3_sign_change = warn;
    return out;
}

HamiltonianModel assemble_single_ion(const ModelParams& p, int n_max, const SparseC& raise_h,
                                     const SparseC& raise_c, bool warn) {
    auto sh = transition(3, 2, 0);  // |2><0|
    auto sc = transition(3, 1, 0);  // |1><0|
    auto in = identity(n_max);

    auto full = [&](const OperatorMatrix& lvl, const SparseC& m) {
        return tensor({lvl, OperatorMatrix(HilbertLayout({n_max}), m)});
    };
    SparseC lower_h = raise_h.adjoint();
    SparseC lower_c = raise_c.adjoint();

    // heating: |2><0| a^dag + |0><2| a; cooling: |1><0| a + |0><1| a^dag
    OperatorMatrix Hh = full(sh, raise_h);
    OperatorMatrix Hm = full(sh.adjoint(), lower_h);
    OperatorMatrix Cc = full(sc, lower_c);
    OperatorMatrix Cm = full(sc.adjoint(), raise_c);

    HamiltonianModel out;
    out.H = OperatorMatrix(Hh.layout, SparseC(p.g_h * (Hh.entries + Hm.entries) +
                                              p.g_c * (Cc.entries + Cm.entries)));
    out.jumps = {OperatorMatrix(Hh.layout, SparseC(std::sqrt(p.gamma_h) *
                                                   tensor({sh.adjoint(), in}).entries)),
                 OperatorMatrix(Hh.layout, SparseC(std::sqrt(p.gamma_c) *
                                                   tensor({sc.adjoint(), in}).entries))};
    out.ld3_sign_change = warn;
    return out;
}

} // namespace

HamiltonianModel two_ion_model(const ModelParams& p, int n_max) {
    p.validate();
    SparseC ad = fock_destroy(n_max).entries.adjoint();
    return assemble_two_ion(p, n_max, ad, ad, false);
}

HamiltonianModel single_ion_model(const ModelParams& p, int n_max) {
    p.validate();
    SparseC ad = fock_destroy(n_max).entries.adjoint();
    return assemble_single_ion(p, n_max, ad, ad, false);
}

HamiltonianModel ld3_two_ion_model(const ModelParams& p, int n_max) {
    p.validate();
    auto [rh, wh] = ld_raise(n_max, p.eta_h);
    auto [rc, wc] = ld_raise(n_max, p.eta_c);
    return assemble_two_ion(p, n_max, rh, rc, wh || wc);
}

HamiltonianModel ld3_single_ion_model(const ModelParams& p, int n_max) {
    p.validate();
    auto [rh, wh] = ld_raise(n_max, p.eta_h);
    auto [rc, wc] = ld_raise(n_max, p.eta_c);
    return assemble_single_ion(p, n_max, rh, rc, wh || wc);
}

HamiltonianModel squeezed_model(const ModelSpec& spec, const ModelParams& p, int n_max) {
    p.validate();
    if (!spec.squeezed) throw std::invalid_argument("squeezed_model: spec.squeezed must be set");
    SparseC a = fock_destroy(n_max).entries;
    cxd phase = std::exp(cxd(0.0, p.beta));
    SparseC A = std::cosh(p.r) * a + phase * std::sinh(p.r) * SparseC(a.adjoint());
    SparseC Ad = A.adjoint();
    if (spec.kind == ModelKind::TwoIon) return assemble_two_ion(p, n_max, Ad, Ad, false);
    return assemble_single_ion(p, n_max, Ad, Ad, false);
}

HamiltonianModel build(const ModelSpec& spec, const ModelParams& p, int n_max) {
    spec.validate();
    if (spec.squeezed) {
        if (spec.ld_order == LdOrder::Third)
            throw std::invalid_argument("build: squeezed third-order models are not supported");
        ModelSpec s = spec;
        s.n_max = n_max;
        return squeezed_model(s, p, n_max);
    }
    if (spec.kind == ModelKind::TwoIon)
        return spec.ld_order == LdOrder::Third ? ld3_two_ion_model(p, n_max)
                                               : two_ion_model(p, n_max);
    return spec.ld_order == LdOrder::Third ? ld3_single_ion_model(p, n_max)
                                           : single_ion_model(p, n_max);
}

HamiltonianModel build(const ModelSpec& spec, const ModelParams& p) {
    return build(spec, p, spec.n_max);
}

lindblad::SteadyStateReport solve_adaptive(const ModelSpec& spec, const ModelParams& p,
                                           int n_start, int n_cap) {
    int n = std::max(4, n_start);
    while (true) {
        auto model = build(spec, p, n);
        auto L = lindblad::build_liouvillian(model.H, model.jumps);
        auto rep = lindblad::steady_state(L);
        if (rep.truncation_ok || n >= n_cap) return rep;
        n = std::min(2 * n, n_cap);
    }
}

} // namespace phl::models
