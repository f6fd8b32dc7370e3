//! Seeded randomized checks of the algebra engine.
//!
//! Each case draws a small graded setup (at most four variables) and runs
//! the soundness properties end to end: Groebner membership and S-pair
//! closure, normal-form laws, input-order independence, kernels that
//! annihilate, resolution exactness, and minimization that neither loses
//! exactness nor moves the Hilbert series. Used by the hidden `selftest`
//! CLI command and by the acceptance suite.

use rand::prelude::*;
use rand_chacha::ChaCha8Rng;

use crate::module::{
    free_resolution, graded_dim, groebner, kernel, minimize, normal_form, verify_resolution,
    FreeModule, ModuleElem, ModuleMap, Presentation,
};
use crate::ring::{Monomial, Polynomial, RingCtx};

#[derive(Debug, Clone)]
pub struct SelftestSummary {
    pub cases: u32,
    pub checks: u64,
    pub failures: Vec<String>,
}

impl SelftestSummary {
    pub fn passed(&self) -> bool {
        self.failures.is_empty()
    }
}

fn monomials_of_degree(nv: usize, d: u32) -> Vec<Monomial> {
    fn rec(nv: usize, var: usize, left: u32, current: &mut Vec<u32>, out: &mut Vec<Monomial>) {
        if var == nv - 1 {
            current.push(left);
            out.push(Monomial::from_exponents(current).unwrap());
            current.pop();
            return;
        }
        for e in 0..=left {
            current.push(e);
            rec(nv, var + 1, left - e, current, out);
            current.pop();
        }
    }
    let mut out = Vec::new();
    rec(nv, 0, d, &mut Vec::new(), &mut out);
    out
}

fn random_homogeneous_elem(
    rng: &mut ChaCha8Rng,
    ambient: &FreeModule,
    degree: i32,
) -> ModuleElem {
    let ring = ambient.ring().clone();
    let nv = ring.num_vars();
    let mut elem = ambient.zero_elem();
    for slot in 0..ambient.rank() {
        let local = degree - ambient.shift(slot);
        if local < 0 || rng.gen_bool(0.4) {
            continue;
        }
        let pool = monomials_of_degree(nv, local as u32);
        let picks = rng.gen_range(1..=2.min(pool.len()));
        let terms: Vec<Monomial> = pool.choose_multiple(rng, picks).copied().collect();
        *elem.component_mut(slot) = Polynomial::from_terms(&ring, terms);
    }
    elem
}

struct Harness {
    checks: u64,
    failures: Vec<String>,
}

impl Harness {
    fn check(&mut self, ok: bool, case: u32, what: &str) {
        self.checks += 1;
        if !ok {
            self.failures.push(format!("case {case}: {what}"));
        }
    }
}

/// Runs `cases` randomized engine checks with the given seed.
pub fn run(seed: u64, cases: u32) -> SelftestSummary {
    let mut rng = ChaCha8Rng::seed_from_u64(seed);
    let mut h = Harness {
        checks: 0,
        failures: Vec::new(),
    };

    for case in 0..cases {
        let nv = rng.gen_range(1..=4usize);
        let ring = RingCtx::standard(nv);
        let rank = rng.gen_range(1..=3usize);
        let shifts: Vec<i32> = (0..rank).map(|_| rng.gen_range(0..=1)).collect();
        let ambient = FreeModule::new(&ring, shifts);

        let num_gens = rng.gen_range(1..=4usize);
        let mut gens = Vec::new();
        for _ in 0..num_gens {
            let degree = rng.gen_range(1..=3i32);
            let g = random_homogeneous_elem(&mut rng, &ambient, degree);
            if !g.is_zero() {
                gens.push(g);
            }
        }
        if gens.is_empty() {
            continue;
        }

        // membership soundness: generators lie in their own span
        let gb = groebner(&gens, &ambient);
        h.check(
            gens.iter().all(|g| gb.contains(g)),
            case,
            "generator escapes its Groebner basis",
        );

        // Buchberger closure: every same-slot S-pair reduces to zero
        let mut closed = true;
        for (a, f) in gb.elems().iter().enumerate() {
            for g in gb.elems().iter().skip(a + 1) {
                let (sf, mf) = f.lead().unwrap();
                let (sg, mg) = g.lead().unwrap();
                if sf != sg {
                    continue;
                }
                let lcm = mf.lcm(mg);
                let s = f
                    .mul_monomial(lcm.div_by(mf).unwrap())
                    .add(&g.mul_monomial(lcm.div_by(mg).unwrap()));
                if !normal_form(&s, &gb).is_zero() {
                    closed = false;
                }
            }
        }
        h.check(closed, case, "S-pair does not reduce to zero");

        // canonical output: generator order is irrelevant
        let mut shuffled = gens.clone();
        shuffled.shuffle(&mut rng);
        h.check(
            groebner(&shuffled, &ambient) == gb,
            case,
            "reduced basis depends on generator order",
        );

        // normal form is idempotent and additive
        let probe_deg = rng.gen_range(1..=3i32);
        let a = random_homogeneous_elem(&mut rng, &ambient, probe_deg);
        let b = random_homogeneous_elem(&mut rng, &ambient, probe_deg);
        let nf_a = normal_form(&a, &gb);
        h.check(normal_form(&nf_a, &gb) == nf_a, case, "normal form not idempotent");
        h.check(
            normal_form(&a.add(&b), &gb) == normal_form(&nf_a.add(&normal_form(&b, &gb)), &gb),
            case,
            "normal form not additive",
        );

        // kernel elements annihilate the map
        if let Ok(map) = ModuleMap::from_generators(&ambient, gens.clone()) {
            let ker = kernel(&map);
            h.check(
                ker.iter().all(|v| map.apply(v).is_zero()),
                case,
                "kernel element does not annihilate",
            );
            h.check(
                ker.iter().all(|v| v.homogeneous_degree_in(map.source()).is_some()),
                case,
                "kernel generator is not homogeneous",
            );

            // resolution: composites vanish and kernels land in images
            let pres = Presentation::cokernel(map);
            let res = free_resolution(&pres, nv + 1, true);
            h.check(res.composites_are_zero(), case, "nonzero composite in resolution");
            h.check(verify_resolution(&res), case, "resolution not exact");

            // minimization: idempotent, exact, Hilbert series preserved
            let min = minimize(&res);
            h.check(
                minimize(&min).ranks() == min.ranks(),
                case,
                "minimize not idempotent",
            );
            let hs_before = graded_dim(&res.presentation());
            let hs_after = graded_dim(&min.presentation());
            h.check(
                hs_before.numerator() == hs_after.numerator(),
                case,
                "minimize moved the Hilbert series",
            );
        }
    }

    SelftestSummary {
        cases,
        checks: h.checks,
        failures: h.failures,
    }
}
