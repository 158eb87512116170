//! Acceptance suite: one PASS/FAIL line per criterion. Runs without the
//! libtest harness so every line is printed even when an earlier one fails.

use std::fs;
use std::panic::{self, AssertUnwindSafe};
use std::path::PathBuf;
use std::process::ExitCode;
use std::time::{Duration, Instant};

use rand::rngs::StdRng;
use rand::{Rng, SeedableRng};

use tanglecolor::braid::{BraidWord, NamedBraid};
use tanglecolor::catalog::{alternating, special_linear_2, symmetric};
use tanglecolor::coloring::{count_colorings_closure, propagate, propagate_weighted, tangle_counts};
use tanglecolor::extension::{
    covering_p_lambda, extension_quandle, galex, galex_criterion, homogeneous_quandle, ExtensionQuandle,
    GalexCovering,
};
use tanglecolor::format::{parse_document, NamedQuandle};
use tanglecolor::group::{enumerate_automorphisms, fix_subgroup, FiniteGroup, GroupAutomorphism, Subgroup};
use tanglecolor::perm::Perm;
use tanglecolor::permgroup::PermGroup;
use tanglecolor::psi::{phi_from_psi, phi_state_sum, psi, symmetry_report, GroupRingElement};
use tanglecolor::quandle::{conj_quandle, end_permutation_p, quandle_isomorphic, Quandle};
use tanglecolor::sweep::{run_sweep, SweepJob};

type Outcome = Result<String, String>;

macro_rules! ensure {
    ($cond:expr, $($msg:tt)+) => {
        if !$cond {
            return Err(format!($($msg)+));
        }
    };
}

fn fixture_dir() -> PathBuf {
    PathBuf::from(env!("CARGO_MANIFEST_DIR")).join("../../fixtures")
}

fn load_quandles(rel: &str) -> Vec<NamedQuandle> {
    let text = fs::read_to_string(fixture_dir().join(rel)).unwrap();
    parse_document(&text).unwrap().quandles()
}

fn load_knots(rel: &str) -> Vec<NamedBraid> {
    let text = fs::read_to_string(fixture_dir().join(rel)).unwrap();
    parse_document(&text).unwrap().knots()
}

/// Connected fixture quandles, smallest first.
fn fixture_quandles() -> Vec<NamedQuandle> {
    let mut out = Vec::new();
    for rel in ["r3.qnd", "extra/z5x2.qnd", "sl23ext.qnd", "extra/a5ext.qnd"] {
        out.extend(load_quandles(rel));
    }
    let (g, f) = sl23_fix(2);
    out.push(NamedQuandle { name: "sl23fix2".into(), quandle: galex(&g, &f), origin: Some((g, f)) });
    out
}

/// Knots from the fixture list, without the 12-letter timing braid.
fn small_knots() -> Vec<NamedBraid> {
    load_knots("knots_more.txt").into_iter().filter(|k| k.braid.letters().len() <= 8).collect()
}

fn sl23_fix(order: usize) -> (FiniteGroup, GroupAutomorphism) {
    let g = special_linear_2(3);
    let aut = enumerate_automorphisms(&g).unwrap();
    let f = aut
        .representatives()
        .find(|f| fix_subgroup(&g, f).order() == order && galex(&g, f).is_connected())
        .cloned()
        .unwrap();
    (g, f)
}

fn braid(n: usize, w: &[i32]) -> BraidWord {
    BraidWord::new(n, w.to_vec()).unwrap()
}

fn trefoil() -> BraidWord {
    braid(2, &[1, 1, 1])
}

fn figure_eight() -> BraidWord {
    braid(3, &[1, -2, 1, -2])
}

/// Oracle: every top tuple, propagated and compared with itself.
fn brute_force_col(q: &Quandle, b: &BraidWord) -> u64 {
    let n = b.strands();
    let mut top = vec![0; n];
    let mut count = 0;
    loop {
        if propagate(q, b, &top) == top {
            count += 1;
        }
        let Some(k) = top.iter().position(|&x| x + 1 < q.order()) else { break };
        top[k] += 1;
        top[..k].iter_mut().for_each(|x| *x = 0);
    }
    count
}

/// Oracle: Φ_φ by enumerating every top tuple of the base quandle.
fn brute_force_phi(ext: &ExtensionQuandle, b: &BraidWord) -> Vec<u64> {
    let phi = &ext.cocycle;
    let (x, lam) = (phi.base(), phi.coefficients());
    let n = b.strands();
    let mut out = vec![0u64; lam.order()];
    let mut top = vec![0; n];
    loop {
        let (bottom, w) = propagate_weighted(phi, b, &top);
        if bottom == top {
            out[w] += 1;
        }
        let Some(k) = top.iter().position(|&c| c + 1 < x.order()) else { break };
        top[k] += 1;
        top[..k].iter_mut().for_each(|c| *c = 0);
    }
    out
}

fn is_bijection(map: &[usize], n: usize) -> bool {
    let mut seen = vec![false; n];
    map.len() == n && map.iter().all(|&x| x < n && !std::mem::replace(&mut seen[x], true))
}

fn criterion_1() -> Outcome {
    let (g, f) = sl23_fix(4);
    let q = galex(&g, &f);
    ensure!(q.order() == 24 && q.is_connected(), "GAlex(SL(2,3), f) must be connected of order 24");
    let k = psi(&q, 0, &trefoil()).map_err(|e| e.to_string())?;
    let m = psi(&q, 0, &trefoil().mirror()).map_err(|e| e.to_string())?;
    let r = psi(&q, 0, &trefoil().reverse()).map_err(|e| e.to_string())?;
    let rm = psi(&q, 0, &trefoil().reverse_mirror()).map_err(|e| e.to_string())?;
    ensure!(k.fiber.len() == 4, "fiber size {} ≠ 4", k.fiber.len());
    // reference vectors for the trefoil and its mirror
    let expected_k = [1u64, 0, 0, 4];
    let expected_m = [1u64, 0, 4, 0];
    let sorted = |v: &[u64]| {
        let mut s = v.to_vec();
        s.sort_unstable();
        s
    };
    ensure!(sorted(&k.counts) == sorted(&expected_k) && k.counts[0] == 1, "Ψ(K) = {k}");
    ensure!(sorted(&m.counts) == sorted(&expected_m) && m.counts[0] == 1, "Ψ(mK) = {m}");
    let pos4 = |v: &[u64]| v.iter().position(|&c| c == 4);
    ensure!(pos4(&k.counts) != pos4(&m.counts), "the 4 sits at the same fiber position in Ψ(K) and Ψ(mK)");
    ensure!(k.counts != m.counts, "Ψ(K) = Ψ(mK)");
    ensure!(k == r && m == rm, "Ψ(K) ≠ Ψ(rK) or Ψ(mK) ≠ Ψ(rmK)");
    Ok(format!("psi={k} psi_m={m} psi_r={r} psi_rm={rm}"))
}

fn criterion_2() -> Outcome {
    let r3 = Quandle::dihedral(3);
    let col3 = count_colorings_closure(&r3, &trefoil());
    let col4 = count_colorings_closure(&r3, &figure_eight());
    ensure!(col3 == brute_force_col(&r3, &trefoil()) && col3 == 9, "Col_R3(3_1) = {col3}");
    ensure!(col4 == brute_force_col(&r3, &figure_eight()) && col4 == 3, "Col_R3(4_1) = {col4}");
    let v = psi(&r3, 0, &trefoil()).map_err(|e| e.to_string())?;
    ensure!(v.counts == vec![3], "psi(R3, 1, 3_1) = {v}");
    Ok(format!("Col(3_1)={col3} Col(4_1)={col4} psi(3_1)=({v})"))
}

fn criterion_3() -> Outcome {
    let unknot = BraidWord::unknot();
    let mut checked = 0;
    for q in fixture_quandles() {
        let v = psi(&q.quandle, 0, &unknot).map_err(|e| e.to_string())?;
        ensure!(v.counts[0] == 1 && v.total() == 1, "{}: psi(unknot) = {v}", q.name);
        let col = count_colorings_closure(&q.quandle, &unknot);
        ensure!(col == q.quandle.order() as u64, "{}: Col(unknot) = {col}", q.name);
        checked += 1;
    }
    Ok(format!("{checked} fixture quandles"))
}

fn round_trip(g: &FiniteGroup, f: &GroupAutomorphism, lambda: &Subgroup) -> Result<(GalexCovering, ExtensionQuandle), String> {
    let cov = covering_p_lambda(g, f, lambda).map_err(|e| e.to_string())?;
    let phi = cov.extract_cocycle().map_err(|e| e.to_string())?;
    phi.validate().map_err(|v| v.to_string())?;
    let ext = extension_quandle(&phi).map_err(|e| e.to_string())?;
    Quandle::from_table(&ext.quandle.rows()).map_err(|e| format!("extension fails the axioms: {e}"))?;
    let map = cov.extension_map(g);
    ensure!(is_bijection(&map, g.order()), "(λ, Λg) ↦ λ·s(Λg) is not a bijection");
    ensure!(ext.quandle.is_homomorphism_to(&galex(g, f), &map), "(λ, Λg) ↦ λ·s(Λg) is not a homomorphism");
    Ok((cov, ext))
}

fn criterion_4() -> Outcome {
    let (g, f) = sl23_fix(4);
    let fix = fix_subgroup(&g, &f);
    round_trip(&g, &f, &fix)?;
    let a5 = alternating(5);
    let t = Perm::from_cycles(5, &[&[1, 2]]).unwrap();
    let conj = a5.conjugation_automorphism(&t).unwrap();
    let fix_a5 = fix_subgroup(&a5.group, &conj);
    ensure!(fix_a5.order() == 6 && !fix_a5.is_abelian(&a5.group), "Fix(A5, conj(1 2)) is not S3-shaped");
    round_trip(&a5.group, &conj, &fix_a5)?;
    let involution = fix.elements().iter().copied().find(|&x| g.element_order(x) == 2).unwrap();
    let half = Subgroup::generated_by(&g, &[involution]);
    round_trip(&g, &f, &half)?;
    Ok("SL(2,3)/Z4, A5/S3, SL(2,3)/Z2".into())
}

fn sl23_extension() -> ExtensionQuandle {
    let (g, f) = sl23_fix(4);
    let fix = fix_subgroup(&g, &f);
    let cov = covering_p_lambda(&g, &f, &fix).unwrap();
    extension_quandle(&cov.extract_cocycle().unwrap()).unwrap()
}

fn criterion_5() -> Outcome {
    let ext = sl23_extension();
    let mut parts = Vec::new();
    for (name, b) in [("3_1", trefoil()), ("4_1", figure_eight()), ("3_1#3_1", trefoil().connected_sum(&trefoil()))] {
        let phi_k = phi_state_sum(&ext.cocycle, &b).map_err(|e| e.to_string())?;
        ensure!(phi_k.coeffs() == brute_force_phi(&ext, &b), "{name}: state sum disagrees with the oracle");
        let phi_rm = phi_state_sum(&ext.cocycle, &b.reverse_mirror()).map_err(|e| e.to_string())?;
        ensure!(phi_rm == phi_k.conjugate(), "{name}: Φ(rm K) = {phi_rm}, conjugate Φ(K) = {}", phi_k.conjugate());
        let v = psi(&ext.quandle, 0, &b).map_err(|e| e.to_string())?;
        let from_psi: GroupRingElement = phi_from_psi(&v, &ext).map_err(|e| e.to_string())?;
        ensure!(from_psi == phi_k, "{name}: |X|Ψ = {from_psi} but Φ = {phi_k}");
        parts.push(format!("{name}: Φ={phi_k}"));
    }
    Ok(parts.join("; "))
}

fn criterion_6() -> Outcome {
    let knots = small_knots();
    let mut checked = 0;
    for q in fixture_quandles().into_iter().filter(|q| !q.quandle.is_faithful()) {
        let p = end_permutation_p(&q.quandle, 0).map_err(|e| e.to_string())?;
        ensure!(p[0] == 0, "{}: p(1) = {}", q.name, p[0] + 1);
        ensure!(p.iter().enumerate().all(|(j, &pj)| p[pj] == j), "{}: p = {p:?} is not an involution", q.name);
        if p.len() == 2 {
            ensure!(p == vec![0, 1], "{}: fiber of size 2 but p = {p:?}", q.name);
        }
        for k in &knots {
            let v = psi(&q.quandle, 0, &k.braid).map_err(|e| e.to_string())?;
            let w = psi(&q.quandle, 0, &k.braid.reverse_mirror()).map_err(|e| e.to_string())?;
            let permuted: Vec<u64> = p.iter().map(|&pj| v.counts[pj]).collect();
            ensure!(w.counts == permuted, "{} / {}: Ψ(rm K) = {w}, p-permuted Ψ(K) = {permuted:?}", q.name, k.name);
            checked += 1;
        }
    }
    Ok(format!("{checked} (quandle, knot) pairs"))
}

fn criterion_7() -> Outcome {
    let t = trefoil();
    let sum = t.connected_sum(&t);
    let mut parts = Vec::new();
    let sl23 = load_quandles("sl23ext.qnd").remove(0).quandle;
    for (name, q) in [("R3", Quandle::dihedral(3)), ("sl23ext", sl23)] {
        let direct = count_colorings_closure(&q, &sum);
        let e = 0;
        let from_e = tangle_counts(&q, &t, e);
        let factored: u64 = (0..q.order()).map(|a| from_e[a] * tangle_counts(&q, &t, a)[e]).sum::<u64>()
            * q.order() as u64;
        ensure!(direct == factored, "{name}: Col(3_1#3_1) = {direct}, factorization gives {factored}");
        if name == "R3" {
            let brute = brute_force_col(&q, &sum);
            ensure!(direct == brute && brute == 27, "R3: Col(3_1#3_1) = {direct}, oracle {brute}");
        }
        parts.push(format!("{name}: {direct}"));
    }
    Ok(parts.join(", "))
}

fn criterion_8() -> Outcome {
    let (g, f) = sl23_fix(4);
    let z5 = FiniteGroup::cyclic(5);
    let double = GroupAutomorphism::from_fn(&z5, |x| 2 * x % 5).unwrap();
    let mut parts = Vec::new();
    for (name, q) in [("GAlex(Z5,x2)", galex(&z5, &double)), ("GAlex(SL(2,3),f)", galex(&g, &f))] {
        let inner = q.inner_group();
        let r_e = q.column(0);
        let derived: PermGroup = inner.derived_subgroup();
        let centralizer = inner.perm_group.centralizer(&r_e).map_err(|e| e.to_string())?;
        let elements: Vec<Perm> = centralizer
            .elements()
            .map_err(|e| e.to_string())?
            .into_iter()
            .filter(|c| derived.contains(c))
            .collect();
        let mut images: Vec<usize> = elements.iter().map(|c| c.apply(0)).collect();
        images.sort_unstable();
        let mut fiber = q.fiber(0).elements;
        fiber.sort_unstable();
        ensure!(elements.len() == fiber.len(), "{name}: |C(R_e) ∩ Inn'| = {} ≠ |F_e| = {}", elements.len(), fiber.len());
        ensure!(images == fiber, "{name}: g ↦ e·g does not map onto the fiber");
        parts.push(format!("{name}: {}", fiber.len()));
    }
    Ok(parts.join(", "))
}

fn all_perms(n: usize) -> Vec<Vec<usize>> {
    if n == 0 {
        return vec![Vec::new()];
    }
    let mut out = Vec::new();
    for p in all_perms(n - 1) {
        for i in 0..n {
            let mut q = p.clone();
            q.insert(i, n - 1);
            out.push(q);
        }
    }
    out
}

fn criterion_9() -> Outcome {
    let z5 = FiniteGroup::cyclic(5);
    let q2 = galex(&z5, &GroupAutomorphism::from_fn(&z5, |x| 2 * x % 5).unwrap());
    let q3 = galex(&z5, &GroupAutomorphism::from_fn(&z5, |x| 3 * x % 5).unwrap());
    let any = all_perms(5).into_iter().any(|p| q2.is_homomorphism_to(&q3, &p));
    ensure!(!any, "a bijection GAlex(Z5,x2) → GAlex(Z5,x3) preserves the product");
    ensure!(quandle_isomorphic(&q2, &q3).map_err(|e| e.to_string())?.is_none(), "search found an isomorphism");
    let mut rng = StdRng::seed_from_u64(9);
    let groups = [
        ("Z7", FiniteGroup::cyclic(7)),
        ("S3", symmetric(3).group),
        ("Z3xZ3", FiniteGroup::direct_product(&FiniteGroup::cyclic(3), &FiniteGroup::cyclic(3))),
        ("A4", alternating(4).group),
    ];
    let mut checked = 0;
    for (name, g) in &groups {
        let aut = enumerate_automorphisms(g).map_err(|e| e.to_string())?;
        for f in aut.representatives() {
            for _ in 0..3 {
                let h = &aut.automorphisms[rng.gen_range(0..aut.automorphisms.len())];
                let conj = f.conjugate_by(h);
                let (a, b) = (galex(g, f), galex(g, &conj));
                ensure!(a.is_homomorphism_to(&b, &h.images()), "{name}: x ↦ g(x) is not an isomorphism");
                ensure!(quandle_isomorphic(&a, &b).map_err(|e| e.to_string())?.is_some(), "{name}: not isomorphic");
                checked += 1;
            }
        }
    }
    Ok(format!("Z5: x2 ≇ x3; {checked} sampled conjugates isomorphic"))
}

fn criterion_10() -> Outcome {
    let z5 = FiniteGroup::cyclic(5);
    let q = galex(&z5, &GroupAutomorphism::from_fn(&z5, |x| 2 * x % 5).unwrap());
    for (name, q) in [("R3", Quandle::dihedral(3)), ("GAlex(Z5,x2)", q)] {
        let rec = galex_criterion(&q, 0).map_err(|e| e.to_string())?.ok_or(format!("{name}: criterion false"))?;
        let rebuilt = galex(&rec.group.group, &rec.automorphism);
        ensure!(is_bijection(&rec.isomorphism, q.order()), "{name}: reconstruction map is not bijective");
        ensure!(rebuilt.is_homomorphism_to(&q, &rec.isomorphism), "{name}: reconstruction is not a homomorphism");
    }
    let s4 = PermGroup::symmetric(4);
    let (transpositions, _) = conj_quandle(&s4, &Perm::from_cycles(4, &[&[1, 2]]).unwrap()).map_err(|e| e.to_string())?;
    ensure!(galex_criterion(&transpositions, 0).map_err(|e| e.to_string())?.is_none(), "Conj(S4, (1 2)) is not GAlex");
    let a5 = alternating(5);
    let t = Perm::from_cycles(5, &[&[1, 2]]).unwrap();
    let conj = a5.conjugation_automorphism(&t).unwrap();
    let fix = fix_subgroup(&a5.group, &conj);
    let hom = homogeneous_quandle(&a5.group, &fix, &conj).map_err(|e| e.to_string())?;
    let (s5conj, _) = conj_quandle(&PermGroup::symmetric(5), &t).map_err(|e| e.to_string())?;
    ensure!(hom.quandle.order() == 10 && s5conj.order() == 10, "orders {} and {}", hom.quandle.order(), s5conj.order());
    ensure!(quandle_isomorphic(&hom.quandle, &s5conj).map_err(|e| e.to_string())?.is_some(), "𝓗(A5, Fix, conj) ≇ Conj(S5, (1 2))");
    Ok("R3 and GAlex(Z5,x2) reconstructed; 𝓗(A5, S3, conj) ≅ Conj(S5, (1 2))".into())
}

fn corrupt(rows: &[Vec<usize>], rng: &mut StdRng) -> Vec<Vec<usize>> {
    let n = rows.len();
    let mut bad = rows.to_vec();
    let (i, j) = (rng.gen_range(0..n), rng.gen_range(0..n));
    let shift = rng.gen_range(1..n);
    bad[i][j] = (bad[i][j] + shift) % n;
    bad
}

fn criterion_11() -> Outcome {
    let mut rng = StdRng::seed_from_u64(11);
    let quandles: Vec<Quandle> = fixture_quandles().into_iter().map(|q| q.quandle).chain([Quandle::trivial(4), Quandle::dihedral(4)]).collect();
    let groups = [special_linear_2(3), FiniteGroup::cyclic(5), alternating(4).group, symmetric(3).group];
    for case in 0..1000 {
        let q = &quandles[case % quandles.len()];
        let bad = corrupt(&q.rows(), &mut rng);
        ensure!(Quandle::from_table(&bad).is_err(), "quandle corruption {case} accepted");
        let g = &groups[case % groups.len()];
        let rows: Vec<Vec<usize>> = g.elements().map(|a| g.row(a).iter().map(|&x| x as usize).collect()).collect();
        let bad = corrupt(&rows, &mut rng);
        ensure!(FiniteGroup::from_table(&bad).is_err(), "group corruption {case} accepted");
    }
    let knots = small_knots();
    let mut pairs = 0;
    for q in fixture_quandles() {
        for k in &knots {
            // psi panics if a bottom color leaves the fiber of the base point
            psi(&q.quandle, 0, &k.braid).map_err(|e| e.to_string())?;
            let (a, b) = (count_colorings_closure(&q.quandle, &k.braid), count_colorings_closure(&q.quandle, &k.braid.reverse_mirror()));
            ensure!(a == b, "{} / {}: Col(K) = {a}, Col(rm K) = {b}", q.name, k.name);
            pairs += 1;
        }
    }
    let sweep_quandles: Vec<NamedQuandle> = fixture_quandles().into_iter().filter(|q| q.quandle.order() <= 24).collect();
    let render = |workers| -> Result<String, String> {
        let job = SweepJob {
            quandles: sweep_quandles.clone(),
            knots: knots.clone(),
            base: 0,
            symmetries: tanglecolor::psi::Symmetry::ALL.to_vec(),
            workers,
            max_inn_order: None,
        };
        let out = run_sweep(&job).map_err(|e| e.to_string())?;
        Ok(out.lines.iter().map(|l| format!("{l}\n")).collect())
    };
    let one = render(1)?;
    ensure!(render(2)? == one && render(8)? == one, "sweep output depends on the worker count");
    Ok(format!("2000 corruptions rejected; {pairs} pairs checked; sweep stable on 1/2/8 workers"))
}

fn criterion_12() -> Outcome {
    let q = load_quandles("extra/a5ext.qnd").remove(0).quandle;
    let w12 = load_knots("knots_more.txt").into_iter().find(|k| k.name == "w12").unwrap();
    ensure!(q.order() == 60 && q.is_connected() && w12.braid.letters().len() == 12, "bad timing fixture");
    let start = Instant::now();
    let r = symmetry_report(&q, 0, &w12.braid).map_err(|e| e.to_string())?;
    let took = start.elapsed();
    ensure!(took < Duration::from_secs(60), "symmetry_report took {took:?}");
    Ok(format!("{}-strand 12-letter braid on order 60 in {took:.2?}, psi={}", w12.braid.strands(), r.psi))
}

fn main() -> ExitCode {
    let criteria: [(&str, fn() -> Outcome, Option<Duration>); 12] = [
        ("trefoil chirality", criterion_1, Some(Duration::from_secs(1))),
        ("R3 coloring counts", criterion_2, Some(Duration::from_secs(1))),
        ("unknot", criterion_3, None),
        ("extension round trip", criterion_4, Some(Duration::from_secs(30))),
        ("conjugate law and Φ = |X|Ψ", criterion_5, None),
        ("end permutation p", criterion_6, None),
        ("connected sum factorization", criterion_7, None),
        ("fiber bijection", criterion_8, None),
        ("GAlex isomorphism and conjugacy", criterion_9, None),
        ("GAlex criterion", criterion_10, None),
        ("property suites", criterion_11, None),
        ("scale gate", criterion_12, Some(Duration::from_secs(60))),
    ];
    panic::set_hook(Box::new(|_| {}));
    let mut failed = 0;
    for (i, (name, run, limit)) in criteria.iter().enumerate() {
        let start = Instant::now();
        let result = panic::catch_unwind(AssertUnwindSafe(run)).unwrap_or_else(|p| {
            let msg = p
                .downcast_ref::<String>()
                .cloned()
                .or_else(|| p.downcast_ref::<&str>().map(|s| s.to_string()))
                .unwrap_or_default();
            Err(format!("panicked: {msg}"))
        });
        let took = start.elapsed();
        let result = match (result, limit) {
            (Ok(_), Some(l)) if took > *l => Err(format!("took {took:.2?}, limit {l:?}")),
            (r, _) => r,
        };
        match result {
            Ok(detail) => println!("criterion {:>2} PASS [{took:>8.2?}] {name}: {detail}", i + 1),
            Err(why) => {
                failed += 1;
                println!("criterion {:>2} FAIL [{took:>8.2?}] {name}: {why}", i + 1);
            }
        }
    }
    if failed == 0 {
        ExitCode::SUCCESS
    } else {
        println!("{failed} criteria failed");
        ExitCode::FAILURE
    }
}
