//! Acceptance gate: one line per criterion, nonzero exit if any fails.

use std::panic::{catch_unwind, AssertUnwindSafe};
use std::process::Command;

use isoparam::cohomring::{
    act_on_polynomial, elementary_symmetric, is_invariant, printed_t_action, theta,
    verify_theta_identities, Basis, CohClass, CohomologyModel, HomClass,
};
use isoparam::obstruct::{theorem_pipeline, PipelineOptions, ResidueSet, TheoremStatus};
use isoparam::pontsolve::{
    check_printed_tables, orbit_classes, solve_constraints, sum_classes, xi_classes,
    ConstraintToggles, LinearForm, UnknownClass, PRINTED_XI_P1,
};
use isoparam::rootsys::{
    build_d4, enumerate_group, orbit, verify_word_table, D4_CARTAN, SIMPLE_INDICES,
};
use isoparam::vect4::{verify_exact_sequence, SphereBundleClass};
use isoparam::Rational;

type Outcome = Result<String, String>;
type Criterion = (&'static str, fn() -> Outcome);

fn ensure(ok: bool, detail: impl Into<String>) -> Outcome {
    let detail = detail.into();
    if ok {
        Ok(detail)
    } else {
        Err(detail)
    }
}

fn model() -> CohomologyModel {
    CohomologyModel::new(&build_d4(4).unwrap())
}

fn weyl_group_order() -> Outcome {
    let rs = build_d4(4).unwrap();
    let g = rs.generators();
    let w = enumerate_group(&g).order();
    let wb = enumerate_group(&g[..3]).order();
    ensure(
        w == 192 && wb == 24,
        format!("|W| = {w}, |<s1,s2,s3>| = {wb}"),
    )
}

fn cartan_matrix() -> Outcome {
    let c = build_d4(4).unwrap().simple_cartan_matrix();
    ensure(c == D4_CARTAN, format!("{c:?}"))
}

fn word_table() -> Outcome {
    let rs = build_d4(4).unwrap();
    let checks = verify_word_table(&rs);
    let ok = checks.len() == 11 && checks.iter().all(|c| c.passed());
    let n = orbit(rs.weyl_group().iter(), rs.root(1).unwrap()).len();
    ensure(
        ok && n == 24,
        format!("{} words, |W·α1| = {n}", checks.len()),
    )
}

fn t_actions_and_duality() -> Outcome {
    let m = model();
    let actions_ok = SIMPLE_INDICES
        .iter()
        .all(|&i| m.action_on_t(i).ok() == printed_t_action(i));
    let mut triples = 0;
    let mut dual_ok = true;
    for &i in &SIMPLE_INDICES {
        for k in 0..4 {
            let x = CohClass::basis_vector(Basis::Omega, k);
            for &j in &SIMPLE_INDICES {
                let h = HomClass::leaf(j).unwrap();
                let lhs = m.pairing(&m.cohomology_action_omega(i, &x).unwrap(), &h);
                let rhs = m.pairing(&x, &m.homology_action(i, &h).unwrap());
                dual_ok &= lhs == rhs;
                triples += 1;
            }
        }
    }
    ensure(
        actions_ok && dual_ok && triples == 64,
        format!("actions match: {actions_ok}, {triples} triples dual: {dual_ok}"),
    )
}

fn theta_identities() -> Outcome {
    let ids = verify_theta_identities();
    ensure(
        ids.len() == 3 && ids.iter().all(|c| c.difference.is_zero()),
        format!("{} identities", ids.len()),
    )
}

fn invariance_suite() -> Outcome {
    let m = model();
    let gens: Vec<_> = SIMPLE_INDICES
        .iter()
        .map(|&i| m.action_on_t(i).unwrap())
        .collect();
    let e = |i| elementary_symmetric(i).unwrap();
    let w_inv = [
        theta(1).unwrap(),
        theta(2).unwrap(),
        theta(3).unwrap(),
        e(4),
    ];
    let w_ok = w_inv.iter().all(|p| is_invariant(p, &gens));
    let wb_ok = (1..=4).all(|i| is_invariant(&e(i), &gens[..3]));
    let s9_moves = act_on_polynomial(&gens[3], &e(1)) != e(1);
    ensure(
        w_ok && wb_ok && s9_moves,
        format!("W: {w_ok}, W_b: {wb_ok}, s9 moves e1: {s9_moves}"),
    )
}

fn orbit_tables() -> Outcome {
    let m = model();
    let classes = orbit_classes(&m, &UnknownClass::generic()).map_err(|e| e.to_string())?;
    check_printed_tables(&classes).map_err(|e| e.to_string())?;
    let solve = solve_constraints(&m, ConstraintToggles::default()).map_err(|e| e.to_string())?;
    let after = solve.classes_k3_eq_minus_k();
    let focal = sum_classes(&after[6..]);
    let kk4 = LinearForm::from_ints([1, 0, 0, 1]);
    let expected = UnknownClass {
        coeffs: [
            LinearForm::zero(),
            -kk4,
            -kk4.scale(Rational::from_int(2)),
            -kk4.scale(Rational::from_int(3)),
        ],
    };
    ensure(
        focal == expected,
        format!(
            "Σ7..12 = {}",
            focal.render(&isoparam::pontsolve::TABLE_NAMES)
        ),
    )
}

fn solver() -> Outcome {
    let m = model();
    let full = solve_constraints(&m, ConstraintToggles::default()).map_err(|e| e.to_string())?;
    let target = [1, 1, -1, -1].map(Rational::from_int);
    let no_sym = solve_constraints(
        &m,
        ConstraintToggles {
            symmetry: false,
            ..Default::default()
        },
    )
    .map_err(|e| e.to_string())?;
    ensure(
        full.solution.is_line_through(&target) && no_sym.solution.dimension() == 2,
        format!(
            "full dim {}, without symmetry dim {}",
            full.solution.dimension(),
            no_sym.solution.dimension()
        ),
    )
}

fn xi_classes_check() -> Outcome {
    let m = model();
    let solve = solve_constraints(&m, ConstraintToggles::default()).map_err(|e| e.to_string())?;
    let xi = xi_classes(&m, &solve.solution).map_err(|e| e.to_string())?;
    let report = theorem_pipeline(&PipelineOptions::default());
    let logged = report
        .errata
        .iter()
        .any(|r| r.detail.contains("erratum: (4-4) ω₄ read as ω₉"));
    ensure(
        xi.euler == CohClass::from_ints(Basis::Omega, [2, -1, 0, 0])
            && xi.p1_per_k == CohClass::from_ints(Basis::Omega, [0, 2, 0, -2])
            && xi.render_p1() == "2k(ω2 - ω9)"
            && logged,
        format!(
            "e = {}, p1 = {} (printed {PRINTED_XI_P1}), erratum logged: {logged}",
            xi.euler,
            xi.render_p1()
        ),
    )
}

fn vect4_arithmetic() -> Outcome {
    let tau = SphereBundleClass::tau();
    let gamma = SphereBundleClass::gamma();
    let gens_ok = tau == SphereBundleClass::new(2, 0)
        && gamma == SphereBundleClass::new(1, -2)
        && tau.is_realizable()
        && gamma.is_realizable()
        && !SphereBundleClass::new(1, 0).is_realizable();
    let round_trip = (-10..=10)
        .all(|n| (-10..=10).all(|m| SphereBundleClass::compose(n, m).decompose() == Ok((n, m))));
    let window = verify_exact_sequence(20);
    ensure(
        gens_ok && round_trip && window.passed(),
        format!(
            "generators: {gens_ok}, round trip: {round_trip}, window N=20: {}",
            window.passed()
        ),
    )
}

fn theorem() -> Outcome {
    let r = theorem_pipeline(&PipelineOptions::default());
    let t = r.theorem.as_ref().ok_or("no theorem summary")?;
    let pairs: Vec<String> = t.restrictions.iter().map(|x| x.f_pair()).collect();
    let ok = pairs == ["(-1,2k)", "(0,-2k)"]
        && t.restrictions[0].residues == ResidueSet::new(2, [1])
        && t.restrictions[1].residues == ResidueSet::new(2, [0])
        && t.intersection.is_empty()
        && r.status == Some(TheoremStatus::Obstructed);
    let code = Command::new(env!("CARGO_BIN_EXE_isoparam"))
        .arg("verify-all")
        .output()
        .map_err(|e| e.to_string())?
        .status
        .code();
    ensure(
        ok && code == Some(0),
        format!(
            "f = {}, intersection {}, status {:?}, exit {code:?}",
            pairs.join(" "),
            t.intersection,
            r.status
        ),
    )
}

fn determinism() -> Outcome {
    let run = || {
        Command::new(env!("CARGO_BIN_EXE_isoparam"))
            .args(["verify-all", "--format", "json"])
            .output()
            .map(|o| o.stdout)
            .map_err(|e| e.to_string())
    };
    let a = run()?;
    let b = run()?;
    ensure(
        !a.is_empty() && a == b,
        format!("{} bytes, identical: {}", a.len(), a == b),
    )
}

fn main() {
    let criteria: [Criterion; 12] = [
        ("weyl-group-order", weyl_group_order),
        ("cartan-matrix", cartan_matrix),
        ("word-table", word_table),
        ("t-actions-and-duality", t_actions_and_duality),
        ("theta-identities", theta_identities),
        ("invariance-suite", invariance_suite),
        ("orbit-tables", orbit_tables),
        ("constraint-solver", solver),
        ("xi-classes", xi_classes_check),
        ("vect4-arithmetic", vect4_arithmetic),
        ("theorem-pipeline", theorem),
        ("json-determinism", determinism),
    ];
    let mut failures = 0;
    for (n, (name, f)) in criteria.iter().enumerate() {
        let outcome =
            catch_unwind(AssertUnwindSafe(f)).unwrap_or_else(|_| Err("panicked".to_string()));
        let (tag, detail) = match outcome {
            Ok(d) => ("PASS", d),
            Err(d) => {
                failures += 1;
                ("FAIL", d)
            }
        };
        println!("{tag} {:>2} {name}: {detail}", n + 1);
    }
    println!(
        "{} of {} criteria pass",
        criteria.len() - failures,
        criteria.len()
    );
    if failures > 0 {
        std::process::exit(1);
    }
}
