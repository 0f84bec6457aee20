//! Acceptance criteria 1 to 10. Runs without the libtest harness so every
//! criterion prints exactly one PASS/FAIL line; the process fails if any does.

use std::time::{Duration, Instant};

use num_complex::Complex64;
use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;
use rayon::prelude::*;
use shiftalg::algebra::{
    build_t, delta, jacobiator, telescoping_residual, Element, GaussRational, RankScope, Scalar, ShiftVariant,
};
use shiftalg::audit::{self, AuditConfig, ReportFormat, Status};
use shiftalg::cohomology::{
    d2_check, exactness_witness, independence_matrix, omega, scalar_matrix_rank, separating_matrix, truncated_h2,
    Cochain2, Functional,
};
use shiftalg::oracle::{
    apply, edge_eigen_sweep, linspace, operator_norm, oracle_mul_check, orbit_span_dim, to_matrix, to_matrix_exact,
    NORM_MAX_ITER, NORM_TOL,
};
use shiftalg::sample;

type Verdict = Result<String, String>;

fn ensure(cond: bool, msg: impl Into<String>) -> Result<(), String> {
    if cond {
        Ok(())
    } else {
        Err(msg.into())
    }
}

fn c1_exact_algebra() -> Verdict {
    let symbols = sample::all_symbols(6);
    let bad: usize = symbols
        .par_iter()
        .map(|&x| {
            let x = Element::from(x);
            let mut bad = 0;
            for &y in &symbols {
                let y = Element::from(y);
                let xy = x.mul(&y);
                for &z in &symbols {
                    let z = Element::from(z);
                    if xy.mul(&z) != x.mul(&y.mul(&z)) || !jacobiator(&x, &y, &z).is_zero() {
                        bad += 1;
                    }
                }
            }
            bad
        })
        .sum();
    ensure(bad == 0, format!("{bad} basis triples fail"))?;
    let mut rng = ChaCha8Rng::seed_from_u64(1);
    for i in 0..500 {
        let (x, y, z) = (sample::element(&mut rng, 4, 6), sample::element(&mut rng, 4, 6), sample::element(&mut rng, 4, 6));
        ensure(x.mul(&y).mul(&z) == x.mul(&y.mul(&z)), format!("random triple {i} not associative"))?;
        ensure(jacobiator(&x, &y, &z).is_zero(), format!("random triple {i} Jacobiator nonzero"))?;
    }
    Ok(format!("{} basis triples + 500 random, 0 failures", symbols.len().pow(3)))
}

fn c2_abelian_telescoping() -> Verdict {
    for v in ShiftVariant::ALL {
        let t = build_t(v);
        let p: Vec<Element> = (0..=8).map(|k| t.pow(k)).collect();
        for m in 1..=8 {
            ensure(telescoping_residual(m, v).is_zero(), format!("{v} telescoping m={m}"))?;
            for n in 1..=8 {
                ensure(p[m as usize].commutator(&p[n]).is_zero(), format!("{v} [T^{m},T^{n}] != 0"))?;
            }
        }
    }
    Ok("m,n <= 8, 3 variants".into())
}

fn c3_oracle_equivalence() -> Verdict {
    let mut rng = ChaCha8Rng::seed_from_u64(3);
    let pairs: Vec<(Element, Element)> =
        (0..500).map(|_| (sample::element(&mut rng, 4, 8), sample::element(&mut rng, 4, 8))).collect();
    let devs: Vec<f64> = pairs
        .par_iter()
        .map(|(x, y)| oracle_mul_check(x, y, 64, Complex64::new(0.3, 0.0)))
        .collect::<Result<_, _>>()
        .map_err(|e| e.to_string())?;
    let max = devs.iter().cloned().fold(0.0, f64::max);
    ensure(max <= 1e-12, format!("max deviation {max:e}"))?;
    Ok(format!("500 products at N=64, max deviation {max:e}"))
}

fn c4_four_site() -> Verdict {
    let (z, o, e, e2) = (Scalar::zero(), Scalar::one(), Scalar::eps(), Scalar::eps_pow(2));
    let want_t = vec![
        vec![e.clone(), o.clone(), z.clone(), z.clone()],
        vec![z.clone(), z.clone(), o.clone(), z.clone()],
        vec![z.clone(), z.clone(), z.clone(), o.clone()],
        vec![z.clone(); 4],
    ];
    let want_t2 = vec![
        vec![e2, e, o.clone(), z.clone()],
        vec![z.clone(), z.clone(), z.clone(), o],
        vec![z.clone(); 4],
        vec![z; 4],
    ];
    let t = build_t(ShiftVariant::Backward);
    let t2 = t.pow(2);
    ensure(to_matrix_exact(&t, 4).map_err(|e| e.to_string())? == want_t, "T matrix differs")?;
    ensure(to_matrix_exact(&t2, 4).map_err(|e| e.to_string())? == want_t2, "T^2 matrix differs")?;
    let c = t.commutator(&t2);
    ensure(c.is_zero(), format!("[T,T^2] = {c}"))?;
    Ok("T and T^2 exact, [T,T^2] = 0".into())
}

fn c5_edge_eigenvalue() -> Verdict {
    let eps = linspace(-1.5, 1.5, 13);
    ensure(eps.len() == 13, "13 sample points")?;
    let mut worst = 0.0f64;
    for v in [ShiftVariant::Backward, ShiftVariant::Forward] {
        for row in edge_eigen_sweep(&eps, 16, v).map_err(|e| e.to_string())? {
            ensure(row.eigenvalues.len() == 16, "16 eigenvalues")?;
            let mut expected = vec![Complex64::new(0.0, 0.0); 16];
            expected[0] = Complex64::new(row.eps, 0.0);
            // Match greedily: the spectrum is a multiset.
            let mut remaining = expected;
            for z in &row.eigenvalues {
                let (i, d) = remaining
                    .iter()
                    .enumerate()
                    .map(|(i, w)| (i, (z - w).norm()))
                    .min_by(|a, b| a.1.total_cmp(&b.1))
                    .unwrap();
                worst = worst.max(d);
                remaining.swap_remove(i);
            }
        }
    }
    ensure(worst <= 1e-10, format!("worst eigenvalue deviation {worst:e}"))?;
    Ok(format!("13 points x 2 variants, worst deviation {worst:e}"))
}

fn c6_bounds() -> Verdict {
    let mut min_margin = f64::INFINITY;
    for v in [ShiftVariant::Forward, ShiftVariant::Backward] {
        for r in 1..=8u32 {
            let d = delta(r, v);
            for eps in [0.1, 0.3, 1.0] {
                let norm = operator_norm(&to_matrix(&d, 64, Complex64::new(eps, 0.0)).map_err(|e| e.to_string())?, NORM_TOL, NORM_MAX_ITER)
                    .map_err(|e| e.to_string())?;
                let margin = (1.0 + eps).powi(r as i32) - 1.0 - norm;
                min_margin = min_margin.min(margin);
                ensure(margin >= -1e-9, format!("{v} r={r} eps={eps}: margin {margin:e}"))?;
            }
            let rank = d.generic_corner_rank(RankScope::Strict).map_err(|e| e.to_string())?;
            ensure(rank == 1 && rank <= r as usize, format!("{v} rank(Delta_{r}) = {rank}"))?;
            for value in [GaussRational::ratio(1, 10), GaussRational::ratio(3, 10), GaussRational::one()] {
                let rank = d.corner_rank(&value, RankScope::Strict).map_err(|e| e.to_string())?;
                ensure(rank == 1, format!("{v} rank(Delta_{r}) at {value} = {rank}"))?;
            }
        }
    }
    Ok(format!("min margin {min_margin:e}, measured rank 1"))
}

fn c7_cohomology() -> Verdict {
    let mut rng = ChaCha8Rng::seed_from_u64(7);
    for i in 0..500 {
        let coeffs: Vec<((u32, u32), Scalar)> =
            (0..3).map(|_| ((rng.gen_range(0..=6), rng.gen_range(0..=6)), sample::scalar(&mut rng, 1))).collect();
        let psi = if i % 2 == 0 { Cochain2::boundary(rng.gen_range(0..=6)) } else { Cochain2::FromFunctional(Functional::new(coeffs)) };
        let (x, y, z) = (sample::element(&mut rng, 3, 6), sample::element(&mut rng, 3, 6), sample::element(&mut rng, 3, 6));
        ensure(d2_check(&psi, &x, &y, &z).is_zero(), format!("d omega != 0 on random triple {i}"))?;
    }
    for j in 0..=6 {
        let w = exactness_witness(j, 6);
        ensure(w.residual == 0, format!("omega_{j} != d phi_{j} on {} pairs", w.residual))?;
    }
    for m in 1..=3 {
        let r = truncated_h2(m).map_err(|e| e.to_string())?;
        ensure(r.complex_ok, format!("d2 d1 != 0 at M={m}"))?;
        ensure(r.betti2 == 0, format!("betti2 = {} at M={m}", r.betti2))?;
    }
    let rank = scalar_matrix_rank(&independence_matrix(8)).map_err(|e| e.to_string())?;
    ensure(rank == 9, format!("independence rank {rank}"))?;
    for i in 0..200 {
        let x = sample::corner_element(&mut rng, 3, 6);
        let y = sample::corner_element(&mut rng, 3, 6);
        let total = (0..=6).fold(Scalar::zero(), |acc, j| &acc + &omega(j, &x, &y));
        ensure(total.is_zero(), format!("trace relation fails on pair {i}"))?;
    }
    Ok("d2 = 0, 7 exactness witnesses, betti2 = 0 for M <= 3, rank 9, trace relation".into())
}

fn c8_separating() -> Verdict {
    let m = separating_matrix(4);
    for j in 0..=4usize {
        for k in 0..=4usize {
            let want = if j == 0 { 0 } else { i64::from(k == j) - i64::from(k == 0) };
            ensure(m[j][k] == Scalar::from_int(want), format!("entry ({j},{k}) = {}", m[j][k]))?;
        }
    }
    let cfg = AuditConfig { claims: Some(vec!["SEPARATING".into()]), ..AuditConfig::default() };
    let reports = audit::run_audit(&cfg).map_err(|e| e.to_string())?;
    ensure(reports.len() == 1 && reports[0].status == Status::Amended, "auditor does not emit AMENDED")?;
    Ok("matrix delta_kj - delta_k0, auditor AMENDED".into())
}

fn c9_vectors() -> Verdict {
    let n = 64usize;
    let eps = GaussRational::ratio(3, 10);
    let t = build_t(ShiftVariant::Backward);
    let exact = to_matrix_exact(&t.substitute(&eps), n).map_err(|e| e.to_string())?;
    let mut worst = 0.0f64;
    for lam in [GaussRational::ratio(1, 2), GaussRational::ratio(-2, 3), &GaussRational::ratio(1, 3) + &GaussRational::i()] {
        let f: Vec<GaussRational> = (0..n as u32).map(|k| lam.pow(k)).collect();
        let out: Vec<GaussRational> = exact
            .iter()
            .map(|row| row.iter().zip(&f).fold(GaussRational::zero(), |acc, (a, x)| &acc + &(&a.coefficient(0) * x)))
            .collect();
        ensure(out[0] == &lam + &eps, format!("defect at site 0 for lambda {lam}"))?;
        for k in 1..=n - 2 {
            ensure(out[k] == &lam * &f[k], format!("eigenrelation at site {k} for lambda {lam}"))?;
        }
        let fc: Vec<Complex64> = f.iter().map(GaussRational::to_complex).collect();
        let outc = apply(&t, &fc, n, eps.to_complex()).map_err(|e| e.to_string())?;
        let lc = lam.to_complex();
        // Relative to the magnitude, since |lambda| > 1 lets f grow.
        let rel = |got: Complex64, want: Complex64| (got - want).norm() / want.norm().max(1.0);
        worst = worst.max(rel(outc[0], lc + eps.to_complex()));
        for k in 1..=n - 2 {
            worst = worst.max(rel(outc[k], lc * fc[k]));
        }
    }
    ensure(worst <= 4.0 * f64::EPSILON, format!("relative float deviation {worst:e}"))?;
    let mut rng = ChaCha8Rng::seed_from_u64(9);
    for i in 0..100 {
        let f: Vec<Complex64> = (0..16).map(|_| Complex64::new(rng.gen_range(-1.0..1.0), rng.gen_range(-1.0..1.0))).collect();
        let d = orbit_span_dim(&f, 16).map_err(|e| e.to_string())?;
        ensure(d == 16, format!("orbit dimension {d} for vector {i}"))?;
    }
    Ok(format!("exact eigenrelation, relative float deviation {worst:e}, 100 orbits span N=16"))
}

fn c10_audit() -> Verdict {
    let cfg = AuditConfig::default();
    let first = audit::run_audit(&cfg).map_err(|e| e.to_string())?;
    let second = audit::run_audit(&cfg).map_err(|e| e.to_string())?;
    let (a, b) = (
        audit::render_report(&first, &cfg, ReportFormat::Structured),
        audit::render_report(&second, &cfg, ReportFormat::Structured),
    );
    ensure(a == b, "structured reports differ between runs")?;
    ensure(first.len() == 23, format!("{} reports", first.len()))?;
    let unexpected = audit::unexpected_statuses(&first);
    ensure(unexpected.is_empty(), format!("unexpected statuses: {unexpected:?}"))?;
    for r in &first {
        if matches!(r.status, Status::Fail | Status::Amended) {
            ensure(r.witness.as_object().is_some_and(|m| !m.is_empty()), format!("{} has an empty witness", r.id))?;
        }
    }
    let h2 = first.iter().find(|r| r.id == "H2-BASIS").unwrap();
    ensure(h2.witness["truncated_h2"]["betti2"] == 0, "H2-BASIS witness lacks betti2 = 0")?;
    Ok(format!("23 reports, fixture statuses, {} identical bytes", a.len()))
}

fn main() {
    let criteria: [(u32, &str, Duration, fn() -> Verdict); 10] = [
        (1, "exact algebra suite", Duration::from_secs(60), c1_exact_algebra),
        (2, "abelianness and telescoping", Duration::from_secs(10), c2_abelian_telescoping),
        (3, "oracle equivalence", Duration::from_secs(60), c3_oracle_equivalence),
        (4, "four-site example", Duration::MAX, c4_four_site),
        (5, "edge eigenvalue sweep", Duration::from_secs(5), c5_edge_eigenvalue),
        (6, "Delta_r bounds", Duration::MAX, c6_bounds),
        (7, "cohomology suite", Duration::from_secs(120), c7_cohomology),
        (8, "separating matrix", Duration::MAX, c8_separating),
        (9, "representation checks", Duration::MAX, c9_vectors),
        (10, "audit determinism and statuses", Duration::from_secs(300), c10_audit),
    ];
    let mut failed = 0;
    for (id, name, limit, run) in criteria {
        let start = Instant::now();
        let verdict = run();
        let elapsed = start.elapsed();
        let verdict = match verdict {
            Ok(msg) if elapsed > limit => Err(format!("{msg}; took {elapsed:.2?}, limit {limit:?}")),
            v => v,
        };
        match verdict {
            Ok(msg) => println!("criterion {id:>2} PASS  {name} ({elapsed:.2?}): {msg}"),
            Err(msg) => {
                failed += 1;
                println!("criterion {id:>2} FAIL  {name} ({elapsed:.2?}): {msg}");
            }
        }
    }
    if failed > 0 {
        eprintln!("{failed} acceptance criteria failed");
        std::process::exit(1);
    }
}
