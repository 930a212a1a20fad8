//! Acceptance gate: one test per release criterion, each printing a single
//! verdict line (visible with `--nocapture`) and enforcing its tolerance and
//! runtime budget.

use deltabound::momentum::{parity_of_profile, parseval_check, phi_k, MomentumProfile};
use deltabound::ndelta::{parity_classify, reconstruct, scan_bound_states};
use deltabound::oracle::{compare, GridParams};
use deltabound::periodic::band_edges;
use deltabound::{analytic, momentum, DeltaPotential, Parity, Well};
use std::time::{Duration, Instant};

/// Runs a criterion, prints its verdict line, and enforces the budget.
fn verdict(name: &str, budget: Option<Duration>, work: impl FnOnce() -> Result<(), String>) {
    let started = Instant::now();
    let mut result = work();
    let elapsed = started.elapsed();
    if result.is_ok() {
        if let Some(limit) = budget {
            if elapsed > limit {
                result = Err(format!("runtime {elapsed:.2?} exceeds budget {limit:.2?}"));
            }
        }
    }
    match &result {
        Ok(()) => println!("acceptance — {name}: PASS ({elapsed:.2?})"),
        Err(msg) => println!("acceptance — {name}: FAIL — {msg}"),
    }
    if let Err(msg) = result {
        panic!("{name}: {msg}");
    }
}

/// Deterministic splitmix64 stream for the randomized criteria.
struct Rng(u64);

impl Rng {
    fn next_u64(&mut self) -> u64 {
        self.0 = self.0.wrapping_add(0x9E37_79B9_7F4A_7C15);
        let mut z = self.0;
        z = (z ^ (z >> 30)).wrapping_mul(0xBF58_476D_1CE4_E5B9);
        z = (z ^ (z >> 27)).wrapping_mul(0x94D0_49BB_1331_11EB);
        z ^ (z >> 31)
    }

    fn uniform(&mut self, lo: f64, hi: f64) -> f64 {
        lo + (hi - lo) * (self.next_u64() >> 11) as f64 / (1u64 << 53) as f64
    }

    fn below(&mut self, n: usize) -> usize {
        (self.next_u64() % n as u64) as usize
    }
}

fn check(ok: bool, msg: String) -> Result<(), String> {
    if ok {
        Ok(())
    } else {
        Err(msg)
    }
}

#[test]
fn single_well_closed_form() {
    verdict("single-well closed form", Some(Duration::from_secs(1)), || {
        let mut rng = Rng(0x5eed_0001);
        for _ in 0..20 {
            let a = rng.uniform(0.01, 10.0);
            let pot = DeltaPotential::single(a).map_err(|e| e.to_string())?;
            let states = scan_bound_states(&pot, a / 2.0 + 1.0, 1e-3, 1e-12)
                .map_err(|e| e.to_string())?
                .states;
            check(states.len() == 1, format!("a={a}: expected 1 state, got {}", states.len()))?;
            let st = &states[0];
            check(
                (st.b() - a / 2.0).abs() <= 1e-10,
                format!("a={a}: b={} vs a/2={}", st.b(), a / 2.0),
            )?;
            check(
                (st.energy() + a * a / 8.0).abs() <= 1e-10,
                format!("a={a}: E={} vs -a^2/8={}", st.energy(), -a * a / 8.0),
            )?;
            check(st.parity() == Parity::Even, format!("a={a}: ground state not even"))?;
            let b = st.b();
            for i in 0..50 {
                let x = -4.0 / b + 8.0 / b * i as f64 / 49.0;
                let got = reconstruct(st, &pot, x);
                let want = b.sqrt() * (-b * x.abs()).exp();
                check(
                    (got - want).abs() <= 1e-10,
                    format!("a={a}, x={x}: phi={got} vs sqrt(b)e^(-b|x|)={want}"),
                )?;
            }
        }
        Ok(())
    });
}

#[test]
fn double_well_quantization() {
    verdict("double-well quantization", Some(Duration::from_secs(1)), || {
        let one = analytic::solve_double(1.0, 1.0, 1e-12).map_err(|e| e.to_string())?;
        check(one.len() == 1, format!("a=1, L=1: expected 1 state, got {}", one.len()))?;
        let two = analytic::solve_double(2.0, 1.0, 1e-12).map_err(|e| e.to_string())?;
        check(two.len() == 2, format!("a=2, L=1: expected 2 states, got {}", two.len()))?;

        for (a, l) in [(1.0, 1.0), (2.0, 1.0), (0.7, 1.0), (3.3, 1.0), (2.0, 0.4)] {
            let states = analytic::solve_double(a, l, 1e-12).map_err(|e| e.to_string())?;
            let even = &states[0];
            check(even.parity() == Parity::Even, format!("a={a}: first state not even"))?;
            check(
                even.b() > a / 2.0 && even.b() < a,
                format!("a={a}, L={l}: even b={} outside (a/2, a)", even.b()),
            )?;
            let r = analytic::even_residual(even.b(), a, l).map_err(|e| e.to_string())?;
            check(r.abs() < 1e-10, format!("a={a}, L={l}: even residual {r:.3e}"))?;
            if let Some(odd) = states.get(1) {
                let r = analytic::odd_residual(odd.b(), a, l).map_err(|e| e.to_string())?;
                check(r.abs() < 1e-10, format!("a={a}, L={l}: odd residual {r:.3e}"))?;
            }
            // the general scan sees the same spectrum
            let pot = DeltaPotential::symmetric_pair(a, l).map_err(|e| e.to_string())?;
            let scanned = scan_bound_states(&pot, a + 1.0, 1e-3, 1e-12)
                .map_err(|e| e.to_string())?
                .states;
            check(
                scanned.len() == states.len(),
                format!("a={a}, L={l}: scan found {} states, closed form {}", scanned.len(), states.len()),
            )?;
        }
        Ok(())
    });
}

#[test]
fn odd_state_threshold() {
    verdict("odd-state threshold", Some(Duration::from_secs(1)), || {
        for a in [0.9, 0.99, 1.01, 1.1] {
            let states = analytic::solve_double(a, 1.0, 1e-12).map_err(|e| e.to_string())?;
            let expect = if a > 1.0 { 2 } else { 1 };
            check(
                states.len() == expect,
                format!("a={a}, L=1: {} states, expected {expect}", states.len()),
            )?;
            check(
                analytic::odd_state_exists(a, 1.0) == (a > 1.0),
                format!("a={a}: existence predicate disagrees with aL > 1"),
            )?;
        }
        Ok(())
    });
}

/// Random compact potential with `n` wells for the transform criteria.
fn random_potential(rng: &mut Rng, n: usize) -> DeltaPotential {
    let mut x = rng.uniform(-2.0, 0.0);
    let wells = (0..n)
        .map(|_| {
            let w = Well { strength: rng.uniform(0.5, 3.0), position: x };
            x += rng.uniform(0.5, 1.5);
            w
        })
        .collect();
    DeltaPotential::new(wells).unwrap()
}

#[test]
fn fourier_transform_consistency() {
    verdict("Fourier-transform consistency", Some(Duration::from_secs(30)), || {
        let mut rng = Rng(0x5eed_0004);
        for case in 0..20 {
            let n = 1 + rng.below(3);
            let pot = random_potential(&mut rng, n);
            let b_max = pot.strength_abs_sum() / 2.0 + 1.0;
            let states = scan_bound_states(&pot, b_max, 1e-3, 1e-12)
                .map_err(|e| e.to_string())?
                .states;
            check(!states.is_empty(), format!("case {case}: no bound states"))?;
            for st in &states {
                let b = st.b();
                let ks = [0.0, b / 2.0, -b / 2.0, b, -b, 3.0 * b, -3.0 * b, 10.0 * b, -10.0 * b];
                for k in ks {
                    let closed = phi_k(st, &pot, k);
                    let quad = momentum::numerical_ft(st, &pot, k, 1e-10)
                        .map_err(|e| format!("case {case}, k={k}: {e}"))?;
                    let diff = (closed - quad).norm();
                    check(
                        diff <= 1e-8 * (1.0 + closed.norm()),
                        format!("case {case}, b={b}, k={k}: |diff|={diff:.3e}"),
                    )?;
                }
                let (pos, mom) = parseval_check(st, &pot).map_err(|e| e.to_string())?;
                check(
                    (pos - mom).abs() <= 1e-8,
                    format!("case {case}, b={b}: norms {pos} vs {mom}"),
                )?;
            }
        }
        Ok(())
    });
}

/// Random mirror-symmetric layout centered on the origin.
fn random_symmetric_potential(rng: &mut Rng) -> DeltaPotential {
    let mut wells = Vec::new();
    if rng.below(2) == 1 {
        wells.push(Well { strength: rng.uniform(0.5, 2.5), position: 0.0 });
    }
    let half = 1 + rng.below(2);
    let mut x = 0.0;
    for _ in 0..half {
        x += rng.uniform(0.3, 1.0);
        let s = rng.uniform(0.5, 2.5);
        wells.push(Well { strength: s, position: x });
        wells.push(Well { strength: s, position: -x });
    }
    DeltaPotential::new(wells).unwrap()
}

#[test]
fn momentum_parity_theorem() {
    verdict("momentum parity theorem", None, || {
        let mut rng = Rng(0x5eed_0005);
        let mut classified = 0usize;
        for case in 0..100 {
            let pot = random_symmetric_potential(&mut rng);
            let b_max = pot.strength_abs_sum() / 2.0 + 1.0;
            let states = scan_bound_states(&pot, b_max, 1e-3, 1e-12)
                .map_err(|e| e.to_string())?
                .states;
            check(!states.is_empty(), format!("case {case}: no bound states"))?;
            for st in &states {
                let from_coeffs = parity_classify(st, &pot, 1e-8);
                let profile = MomentumProfile::from_state(st, &pot);
                let from_profile = parity_of_profile(&profile, 1e-8);
                check(
                    from_profile == from_coeffs,
                    format!(
                        "case {case}, b={}: position parity {from_coeffs} vs momentum parity {from_profile}",
                        st.b()
                    ),
                )?;
                if from_coeffs != Parity::None {
                    classified += 1;
                }
            }
        }
        check(classified >= 100, format!("only {classified} states classified; theorem barely exercised"))?;
        Ok(())
    });
}

#[test]
fn grid_oracle_equivalence() {
    verdict("grid-oracle equivalence", Some(Duration::from_secs(60)), || {
        let single = DeltaPotential::single(2.0).map_err(|e| e.to_string())?;
        let double = DeltaPotential::symmetric_pair(2.0, 1.0).map_err(|e| e.to_string())?;
        for pot in [&single, &double] {
            let defaults = GridParams::defaults_for(pot);
            let coarse = compare(pot, None, GridParams { h: 5e-3, ..defaults })
                .map_err(|e| e.to_string())?;
            check(
                coarse.fourier_count == coarse.oracle_negative_count,
                format!("state counts differ: {} vs {}", coarse.fourier_count, coarse.oracle_negative_count),
            )?;
            check(
                coarse.rows.len() == coarse.fourier_count,
                format!("{} rows for {} states", coarse.rows.len(), coarse.fourier_count),
            )?;
            let worst = coarse.max_rel_error().ok_or("no rows to compare")?;
            check(worst < 1e-2, format!("h=5e-3: max relative error {worst:.3e}"))?;

            let fine = compare(pot, None, GridParams { h: 2.5e-3, ..defaults })
                .map_err(|e| e.to_string())?;
            let worst_fine = fine.max_rel_error().ok_or("no rows at fine h")?;
            check(
                worst_fine < worst,
                format!("error did not decrease: {worst:.3e} -> {worst_fine:.3e}"),
            )?;
        }
        Ok(())
    });
}

#[test]
fn separation_limits() {
    verdict("separation limits", None, || {
        // far apart: both states degenerate onto the isolated-well energy
        for a in [1.0, 2.5, 7.0] {
            let l = 20.0 / a;
            let states = analytic::solve_double(a, l, 1e-12).map_err(|e| e.to_string())?;
            check(states.len() == 2, format!("a={a}, L=20/a: expected a degenerate pair"))?;
            let e_single = -a * a / 8.0;
            for st in &states {
                let rel = (st.energy() - e_single).abs() / e_single.abs();
                check(rel <= 1e-6, format!("a={a}: {} vs {e_single}, rel {rel:.3e}", st.energy()))?;
            }
        }
        // collapsed: the even state sees one well of doubled strength
        for a in [1.0, 2.0, 5.0] {
            let states = analytic::solve_double(a, 1e-6, 1e-12).map_err(|e| e.to_string())?;
            let even = &states[0];
            let e_merged = -(2.0 * a) * (2.0 * a) / 8.0;
            let rel = (even.energy() - e_merged).abs() / e_merged.abs();
            check(rel <= 1e-4, format!("a={a}, L=1e-6: {} vs {e_merged}, rel {rel:.3e}", even.energy()))?;
        }
        Ok(())
    });
}

#[test]
fn lattice_band_consistency() {
    verdict("lattice-band consistency", Some(Duration::from_secs(60)), || {
        let (a, d) = (2.0, 1.0);
        let (top, bottom) = band_edges(a, d, 1e-12);
        let b_top = top.ok_or("zone-center edge missing")?;
        // ad = 2: the zone-edge state merges into the continuum, so the band
        // floor is b = 0
        let b_bottom = bottom.unwrap_or(0.0);

        let wells = (0..21).map(|i| Well { strength: a, position: i as f64 * d }).collect();
        let chain = DeltaPotential::new(wells).map_err(|e| e.to_string())?;
        let b_max = chain.strength_abs_sum() / 2.0 + 1.0;
        let states = scan_bound_states(&chain, b_max, 1e-3, 1e-12)
            .map_err(|e| e.to_string())?
            .states;
        check(!states.is_empty(), "chain found no bound states".into())?;
        for st in &states {
            check(
                st.b() <= b_top + 1e-3 && st.b() >= b_bottom - 1e-3,
                format!("chain b={} outside band [{b_bottom}, {b_top}] + 1e-3", st.b()),
            )?;
        }

        let (top, bottom) = band_edges(2.0, 40.0, 1e-12);
        let width = top.ok_or("wide-spacing top missing")? - bottom.ok_or("wide-spacing bottom missing")?;
        check(width.abs() < 1e-6, format!("bandwidth {width:.3e} at d=40"))?;
        Ok(())
    });
}
