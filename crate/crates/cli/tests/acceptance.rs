//! Exit criteria. Every check is an exact polynomial identity unless noted;
//! each criterion prints one PASS/FAIL line.

use std::process::Command;

use charlier_core::charlier::{
    self, charlier, charlier_at, inner_product_classical, laguerre, moment,
};
use charlier_core::diffeq::{self, apply_difference_equation, CoeffTable};
use charlier_core::generalized::{gen_charlier, inner_product_general, norm_general};
use charlier_core::poly::{factorial, int, rat, Poly, Rational, Var};
use charlier_core::Verdict;
use num_traits::{One, ToPrimitive};
use serde_json::Value;

const BIN: &str = env!("CARGO_BIN_EXE_charlier");

/// Criterion 9: relative agreement target for the numeric moment oracle.
/// Relative, since m_10(1) = 115975 already has an f64 spacing of 1.5e-11.
const MOMENT_TOLERANCE: f64 = 1e-12;
/// Criterion 9: number of terms kept in the truncated Poisson sum.
const MOMENT_TERMS: u32 = 60;

type Criterion = (&'static str, fn() -> Result<(), String>);

fn check(label: impl FnOnce() -> String, v: Verdict) -> Result<(), String> {
    v.map_err(|f| format!("{}: {f}", label()))
}

fn zero(label: impl FnOnce() -> String, p: Poly) -> Result<(), String> {
    if p.is_zero() {
        Ok(())
    } else {
        Err(format!("{}: residual {p}", label()))
    }
}

fn theorem_one() -> Result<(), String> {
    let table = CoeffTable::build(12);
    for n in 0..=12 {
        zero(|| format!("DV n={n}"), apply_difference_equation(&table, n))?;
    }
    Ok(())
}

fn coefficient_closed_forms() -> Result<(), String> {
    let table = CoeffTable::build(12);
    for i in 1..=12u32 {
        let p = table.ai(i);
        zero(|| format!("A_{i}(0)"), p.substitute(Var::X, &int(0)))?;
        if p.degree_in(Var::X) > i as i64 {
            return Err(format!("deg_x A_{i} = {}", p.degree_in(Var::X)));
        }
        if p.degree_in(Var::A) != 2 * i as i64 - 2 {
            return Err(format!("deg_a A_{i} = {}", p.degree_in(Var::A)));
        }
        let sign = if i % 2 == 0 { int(1) } else { int(-1) };
        let lead_a = Poly::x().scale(&(sign.clone() / (factorial(i) * factorial(i - 1))));
        zero(
            || format!("a-leading A_{i}"),
            p.coeff_of(Var::A, 2 * i - 2) - lead_a,
        )?;
        let h = p.coeff_of(Var::X, i);
        let scale = sign / factorial(i);
        let via_c = charlier_at(i as i64 - 1, &int(i as i64 - 2)).scale(&scale);
        let via_l = laguerre(i - 1, &Poly::from(-1), Var::A).scale(&scale);
        zero(|| format!("h_{i} vs C"), &h - &via_c)?;
        zero(|| format!("h_{i} vs L"), &h - &via_l)?;
    }
    Ok(())
}

fn classical_orthogonality() -> Result<(), String> {
    for m in 0..=12u32 {
        for n in 0..=12u32 {
            let ip = inner_product_classical(&charlier(m as i64), &charlier(n as i64));
            let expected = if m == n {
                Poly::a().pow(n).scale(&(Rational::one() / factorial(n)))
            } else {
                Poly::zero()
            };
            zero(|| format!("<C_{m}, C_{n}>"), ip - expected)?;
        }
    }
    Ok(())
}

fn generalized_orthogonality() -> Result<(), String> {
    let family: Vec<Poly> = (0..=10).map(|n| gen_charlier(n).poly).collect();
    for n in 0..=10usize {
        for m in 0..n {
            zero(
                || format!("<C_{m}^(a,N), C_{n}^(a,N)>"),
                inner_product_general(&family[m], &family[n]),
            )?;
        }
        let classical = Poly::a()
            .pow(n as u32)
            .scale(&(Rational::one() / factorial(n as u32)));
        zero(
            || format!("norm {n} at N=0"),
            norm_general(n as u32).substitute(Var::N, &int(0)) - classical,
        )?;
    }
    Ok(())
}

fn classical_identity_battery() -> Result<(), String> {
    for n in 0..=12 {
        check(|| format!("lowering {n}"), charlier::verify_lowering(n))?;
        check(
            || format!("second order {n}"),
            charlier::verify_second_order(n),
        )?;
        check(
            || format!("Laguerre {n}"),
            charlier::verify_laguerre_relation(n),
        )?;
        if n >= 1 {
            check(
                || format!("value difference {n}"),
                charlier::verify_value_difference(n),
            )?;
        }
    }
    for n in 0..=8 {
        for p in [int(-1), int(n as i64), rat(1, 2)] {
            check(
                || format!("shift n={n} p={p}"),
                charlier::verify_shift_identity(n, &p),
            )?;
        }
    }
    for i in 0..=12 {
        for j in 0..=i {
            check(
                || format!("cru i={i} j={j}"),
                charlier::verify_convolution(i, j),
            )?;
        }
    }
    for n in 1..=6 {
        check(
            || format!("inverse matrix {n}"),
            charlier::verify_inverse_matrix(n),
        )?;
    }
    Ok(())
}

fn proof_obligations() -> Result<(), String> {
    let table = CoeffTable::build(10);
    for n in 0..=10 {
        check(|| format!("form0 {n}"), diffeq::verify_form0(&table, n))?;
        check(|| format!("form1 {n}"), diffeq::verify_form1(&table, n))?;
        check(|| format!("form2 {n}"), diffeq::verify_form2(&table, n))?;
        if n >= 1 {
            check(
                || format!("reduction lemma {n}"),
                diffeq::verify_reduction_lemma(n),
            )?;
        }
    }
    let solution = diffeq::forward_substitution(10).map_err(|f| f.to_string())?;
    for i in 1..=10 {
        check(
            || format!("uniqueness {i}"),
            diffeq::verify_uniqueness(&table, &solution, i),
        )?;
    }
    Ok(())
}

fn remarks_battery() -> Result<(), String> {
    let table = CoeffTable::build(12);
    for n in 0..=10u32 {
        check(
            || format!("expansion {n}"),
            diffeq::verify_expansion_identity(&charlier(n as i64)),
        )?;
        check(
            || format!("classical series {n}"),
            diffeq::verify_classical_infinite_order(n),
        )?;
        check(
            || format!("combined {n}"),
            diffeq::verify_combined_equation(&table, n),
        )?;
    }
    for i in 1..=11 {
        check(
            || format!("degree escalation {i}"),
            diffeq::verify_degree_escalation(&table, i),
        )?;
    }
    Ok(())
}

fn mixed_operator_mechanism() -> Result<(), String> {
    for n in 0..=10u32 {
        for i in 0..=n.min(8) {
            for k in 0..=i {
                check(
                    || format!("mixed i={i} k={k} n={n}"),
                    diffeq::verify_mixed_leading(i, k, n),
                )?;
            }
        }
    }
    Ok(())
}

fn moment_oracle() -> Result<(), String> {
    // Bell numbers by B_{m+1} = sum_j binom(m, j) B_j.
    let mut bell: Vec<u64> = vec![1];
    for m in 0..10u64 {
        let mut binom = 1u64;
        let mut next = 0u64;
        for j in 0..=m {
            next += binom * bell[j as usize];
            binom = binom * (m - j) / (j + 1);
        }
        bell.push(next);
    }
    for k in 0..=10u32 {
        let exact = moment(k as usize)
            .substitute(Var::A, &int(1))
            .as_constant()
            .unwrap();
        if exact != int(bell[k as usize] as i64) {
            return Err(format!("m_{k}(1) = {exact}, Bell = {}", bell[k as usize]));
        }
        // sum_{x=0}^{X} e^{-1} x^k / x!
        let mut numeric = 0.0f64;
        let mut inv_fact = 1.0f64;
        for x in 0..=MOMENT_TERMS {
            if x > 0 {
                inv_fact /= x as f64;
            }
            numeric += (x as f64).powi(k as i32) * inv_fact;
        }
        numeric *= (-1.0f64).exp();
        let exact = exact.to_f64().unwrap();
        let err = (numeric - exact).abs() / exact.abs().max(1.0);
        if err > MOMENT_TOLERANCE {
            return Err(format!(
                "k={k}: numeric {numeric:e} vs exact {exact:e}, relative error {err:e}"
            ));
        }
    }
    Ok(())
}

fn cli_contract() -> Result<(), String> {
    let out = Command::new(BIN)
        .arg("verify")
        .output()
        .map_err(|e| e.to_string())?;
    if out.status.code() != Some(0) {
        return Err(format!(
            "default verify exited with {:?}",
            out.status.code()
        ));
    }
    let report: Value = serde_json::from_slice(&out.stdout).map_err(|e| e.to_string())?;
    if report["summary"]["failed"] != 0 {
        return Err("default verify reported failures".into());
    }

    let out = Command::new(BIN)
        .args([
            "verify",
            "--suite",
            "diffeq",
            "--n-max",
            "4",
            "--i-max",
            "4",
            "--mutate-a1",
        ])
        .output()
        .map_err(|e| e.to_string())?;
    if out.status.code() == Some(0) {
        return Err("mutated A_1 fixture exited 0".into());
    }
    let report: Value = serde_json::from_slice(&out.stdout).map_err(|e| e.to_string())?;
    let dv1 = report["cases"]
        .as_array()
        .and_then(|cs| {
            cs.iter()
                .find(|c| c["identity"] == "DV" && c["indices"] == serde_json::json!([1]))
        })
        .ok_or("no DV case for n = 1")?;
    if dv1["status"] != "fail" || dv1["residual"].as_str().is_none_or(str::is_empty) {
        return Err(format!("mutated DV case lacks a residual: {dv1}"));
    }

    let golden = std::path::Path::new(env!("CARGO_MANIFEST_DIR")).join("tests/golden");
    for (format, file) in [
        ("json", "coeffs_3.json"),
        ("csv", "coeffs_3.csv"),
        ("latex", "coeffs_3.tex"),
    ] {
        let expected = std::fs::read(golden.join(file)).map_err(|e| e.to_string())?;
        for _ in 0..2 {
            let out = Command::new(BIN)
                .args(["coeffs", "--i-max", "3", "--format", format])
                .output()
                .map_err(|e| e.to_string())?;
            if out.stdout != expected {
                return Err(format!("{format} output differs from golden file"));
            }
        }
    }
    Ok(())
}

#[test]
fn acceptance_criteria() {
    let criteria: [Criterion; 10] = [
        (
            "1 difference equation annihilates C_n^(a,N), n <= 12",
            theorem_one,
        ),
        ("2 closed forms of A_i, i <= 12", coefficient_closed_forms),
        (
            "3 classical orthogonality, m, n <= 12",
            classical_orthogonality,
        ),
        (
            "4 point-mass orthogonality and norms, n <= 10",
            generalized_orthogonality,
        ),
        ("5 classical identity battery", classical_identity_battery),
        (
            "6 form0/form1/form2, reduction lemma, uniqueness",
            proof_obligations,
        ),
        (
            "7 series expansion, classical and combined equations, degree escalation",
            remarks_battery,
        ),
        (
            "8 mixed-operator leading coefficients",
            mixed_operator_mechanism,
        ),
        (
            "9 moments vs Bell numbers and truncated Poisson sum",
            moment_oracle,
        ),
        (
            "10 CLI exit codes, mutation fixture, golden tables",
            cli_contract,
        ),
    ];
    let mut failed = Vec::new();
    for (name, run) in criteria {
        match run() {
            Ok(()) => println!("[PASS] {name}"),
            Err(why) => {
                println!("[FAIL] {name}: {why}");
                failed.push(name);
            }
        }
    }
    assert!(failed.is_empty(), "failed criteria: {failed:?}");
}
