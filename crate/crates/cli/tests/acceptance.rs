//! Acceptance gate: one PASS/FAIL line per criterion, nonzero exit if any fails.

use std::panic::{catch_unwind, AssertUnwindSafe};
use std::path::PathBuf;
use std::process::{Command, ExitCode};
use std::sync::Arc;
use std::time::{Duration, Instant};

use rand::SeedableRng;
use rand_chacha::ChaCha8Rng;
use serde_json::Value;

use qtilt::algebra::BasicAlgebra;
use qtilt::builtin;
use qtilt::complexes::{homotopy_hom, random_complex, splits_into_homology, ChainMap, Complex};
use qtilt::modrep::{canonical_map, ext, global_dimension, hom, Representation};
use qtilt::repclass::{enumerate_indecomposables, exhaustive_binary_check, random_cross_check};
use qtilt::scalars::ExactField;
use qtilt::tilting::{
    match_presentation, regular_generator_map, verify_self_orthogonal, verify_tilting, EndomorphismAlgebra,
    TiltingCandidate, VerifyOptions,
};

type Check = Result<String, String>;
type Criterion = (&'static str, fn() -> Check);

const F101: ExactField = ExactField::Prime(101);

fn ensure(cond: bool, what: impl Into<String>) -> Result<(), String> {
    if cond {
        Ok(())
    } else {
        Err(what.into())
    }
}

fn arc(a: BasicAlgebra) -> Arc<BasicAlgebra> {
    Arc::new(a)
}

fn scratch(name: &str) -> PathBuf {
    let dir = PathBuf::from(env!("CARGO_TARGET_TMPDIR"));
    dir.join(name)
}

fn qt(args: &[&str]) -> Result<(std::process::Output, Duration), String> {
    let start = Instant::now();
    let out = Command::new(env!("CARGO_BIN_EXE_qt")).args(args).output().map_err(|e| format!("cannot run qt: {e}"))?;
    Ok((out, start.elapsed()))
}

fn read_json(path: &PathBuf) -> Result<Value, String> {
    let text = std::fs::read_to_string(path).map_err(|e| format!("{}: {e}", path.display()))?;
    serde_json::from_str(&text).map_err(|e| format!("{}: {e}", path.display()))
}

/// `dim e_j R e_i`: paths `i -> j` in `A_10` that avoid the relation path `1 -> 9`.
fn expected_r_table() -> Vec<Vec<u64>> {
    (0..10).map(|i| (0..10).map(|j| u64::from(i <= j && !(i == 0 && j >= 8))).collect()).collect()
}

fn criterion_1() -> Check {
    let path = scratch("repro.json");
    let path_str = path.to_str().ok_or("non-UTF-8 scratch path")?;
    let (out, elapsed) = qt(&["paper-repro", "--seed", "0", "--json", path_str])?;
    ensure(out.status.success(), format!("qt exited with {}", out.status))?;
    ensure(elapsed < Duration::from_secs(60), format!("took {elapsed:?}"))?;
    let doc = read_json(&path)?;
    let expected = expected_r_table();
    for field in ["F101", "Q"] {
        let f = &doc["fields"][field];
        ensure(f["dims"]["R"] == 53 && f["dims"]["S"] == 53, format!("{field}: dims {}", f["dims"]))?;
        let table: Vec<Vec<u64>> = serde_json::from_value(f["hom_table_R"].clone()).map_err(|e| e.to_string())?;
        ensure(table == expected, format!("{field}: table of e_j R e_i differs"))?;
        let t = &f["tilting"];
        let so = &t["self_orthogonality"];
        ensure(
            so["holds"] == true && so["shifts"] == serde_json::json!([-3, 3]),
            format!("{field}: self-orthogonality {so}"),
        )?;
        let e = &t["endomorphism"];
        ensure(e["dim"] == 53, format!("{field}: dim End(T) = {}", e["dim"]))?;
        let pres = &e["presentation"];
        ensure(
            pres["relations"].as_array().is_some_and(Vec::is_empty),
            format!("{field}: relations {}", pres["relations"]),
        )?;
        let arrows: Vec<String> = serde_json::from_value(pres["arrows"].clone()).map_err(|e| e.to_string())?;
        let mut pairs: Vec<String> =
            arrows.iter().map(|a| a.split_once(": ").map_or(a.clone(), |x| x.1.to_string())).collect();
        pairs.sort();
        let mut want: Vec<String> =
            (2..=9).map(|i| format!("T{i} -> T{}", i + 1)).chain(["T8 -> T1".to_string()]).collect();
        want.sort();
        ensure(pairs == want, format!("{field}: quiver of End(T) is {pairs:?}"))?;
        ensure(
            e["target"]["map_is_isomorphism"] == true && e["target"]["matches"] == true,
            format!("{field}: generator map {}", e["target"]),
        )?;
        ensure(t["result"] == "PASS", format!("{field}: tilting {}", t["result"]))?;
    }
    ensure(doc["summary"]["fail"] == 0, format!("summary {}", doc["summary"]))?;
    Ok(format!("F101 and Q in {:.1}s", elapsed.as_secs_f64()))
}

fn criterion_2() -> Check {
    let start = Instant::now();
    let r2 = arc(builtin::algebra_r(ExactField::Prime(2)));
    let ivs2 = enumerate_indecomposables(&r2).map_err(|e| e.to_string())?;
    ensure(ivs2.len() == 53, format!("{} intervals over F2", ivs2.len()))?;
    // Oracle: intervals [a, b] of A_10 not containing both 1 and 9.
    let oracle = (1..=10).flat_map(|a| (a..=10).map(move |b| (a, b))).filter(|&(a, b)| !(a == 1 && b >= 9)).count();
    ensure(oracle == 53, format!("oracle count {oracle}"))?;
    let ex = exhaustive_binary_check(&r2, &ivs2).map_err(|e| e.to_string())?;
    ensure(ex.unmatched == 0 && ex.intervals_seen() == 53, format!("exhaustive: {ex:?}"))?;
    let r3 = arc(builtin::algebra_r(ExactField::Prime(3)));
    let ivs3 = enumerate_indecomposables(&r3).map_err(|e| e.to_string())?;
    ensure(ivs3.len() == 53, format!("{} intervals over F3", ivs3.len()))?;
    let rc = random_cross_check(&r3, &ivs3, 200, 2, 0).map_err(|e| e.to_string())?;
    ensure(rc.modules == 200 && rc.unmatched == 0, format!("random: {rc:?}"))?;
    let elapsed = start.elapsed();
    ensure(elapsed < Duration::from_secs(120), format!("took {elapsed:?}"))?;
    Ok(format!(
        "53 intervals; {} 0/1 modules over F2 and 200 random modules over F3 (dims and entries <= 2) decompose into intervals; {:.1}s",
        ex.modules,
        elapsed.as_secs_f64()
    ))
}

fn random_pair(a: &Arc<BasicAlgebra>, rng: &mut ChaCha8Rng) -> Result<(Representation, Representation), String> {
    let m = Representation::random(a.clone(), 2, rng).map_err(|e| e.to_string())?;
    let n = Representation::random(a.clone(), 2, rng).map_err(|e| e.to_string())?;
    Ok((m, n))
}

fn criterion_3() -> Check {
    let r = arc(builtin::algebra_r(F101));
    let s = arc(builtin::algebra_s(F101));
    let (gr, gs) = (global_dimension(&r), global_dimension(&s));
    ensure(gr == 2 && gs == 1, format!("gldim R = {gr}, gldim S = {gs}"))?;
    let mut rng = ChaCha8Rng::seed_from_u64(3);
    for (a, g) in [(&r, gr), (&s, gs)] {
        for _ in 0..50 {
            let (m, n) = random_pair(a, &mut rng)?;
            for i in g + 1..=g + 2 {
                let d = ext(&m, &n, i).map_err(|e| e.to_string())?.dim;
                ensure(d == 0, format!("Ext^{i} = {d} above gldim {g}"))?;
            }
        }
    }
    Ok("gldim R = 2, gldim S = 1; Ext^{g+1}, Ext^{g+2} vanish on 50 random pairs for each".into())
}

fn criterion_4() -> Check {
    let s = arc(builtin::algebra_s(F101));
    let mut rng = ChaCha8Rng::seed_from_u64(4);
    for k in 0..100 {
        let c = random_complex(&s, 0, 2, 3, &mut rng).map_err(|e| e.to_string())?;
        let cert = splits_into_homology(&c).map_err(|e| e.to_string())?;
        let w = cert.witness.as_ref().ok_or(format!("S complex {k} has no witness"))?;
        ensure(cert.splits && w.commutes() && w.is_quasi_iso(), format!("S complex {k} does not split"))?;
    }
    let r = arc(builtin::algebra_r(F101));
    let (p8, p9) = (Representation::projective(r.clone(), 7), Representation::projective(r.clone(), 8));
    let d = canonical_map(&r, 7, 8).map_err(|e| e.to_string())?;
    let c = Complex::new(r.clone(), 0, vec![p8, p9], vec![d]).map_err(|e| e.to_string())?;
    let cert = splits_into_homology(&c).map_err(|e| e.to_string())?;
    ensure(!cert.splits && cert.witness.is_none() && cert.augmentation.is_quasi_iso(), "P8 -> P9 over R splits")?;
    let mut failures = 1;
    let mut rng = ChaCha8Rng::seed_from_u64(40);
    for _ in 0..50 {
        let c = random_complex(&r, 0, 2, 3, &mut rng).map_err(|e| e.to_string())?;
        let cert = splits_into_homology(&c).map_err(|e| e.to_string())?;
        match (&cert.witness, cert.splits) {
            (Some(w), true) => ensure(w.is_quasi_iso(), "R witness is not a quasi-isomorphism")?,
            (None, false) => failures += 1,
            _ => return Err("inconsistent splitting certificate over R".into()),
        }
    }
    Ok(format!("100/100 S complexes split with witnesses; {failures} R complexes certified non-split"))
}

fn criterion_5() -> Check {
    let mut rng = ChaCha8Rng::seed_from_u64(5);
    let r = arc(builtin::algebra_r(F101));
    let s = arc(builtin::algebra_s(F101));
    for a in [&r, &s] {
        for _ in 0..20 {
            let c = random_complex(a, -1, 2, 3, &mut rng).map_err(|e| e.to_string())?;
            ensure(c.d_squared_is_zero(), "d^2 != 0")?;
            let h = homotopy_hom(&c, &c, 0).map_err(|e| e.to_string())?;
            let id = ChainMap::identity(&c);
            ensure(h.class_of_chain_map(&id).is_some(), "identity is not a cycle of Hom(C, C)")?;
            ensure(h.contains_identity_class() == !c.is_acyclic(), "identity class disagrees with acyclicity")?;
        }
    }
    for k in 0..100 {
        let a = if k % 2 == 0 { &r } else { &s };
        let m = Representation::random(a.clone(), 3, &mut rng).map_err(|e| e.to_string())?;
        for i in 0..a.num_vertices() {
            let d = hom(&Representation::projective(a.clone(), i), &m).map_err(|e| e.to_string())?.dim();
            ensure(d == m.dims()[i], format!("dim Hom(P_{}, M) = {d} but dim M_{} = {}", i + 1, i + 1, m.dims()[i]))?;
        }
    }
    for a in [&r, &s] {
        let t = TiltingCandidate::regular(a.clone());
        let end = EndomorphismAlgebra::new(&t).map_err(|e| e.to_string())?;
        let map = regular_generator_map(&end, &t).map_err(|e| e.to_string())?;
        let m = match_presentation(&end.algebra, a, Some(&map)).map_err(|e| e.to_string())?;
        ensure(m.matches && m.map_is_isomorphism == Some(true), format!("End(+P_i) vs A: {}", m.detail))?;
    }
    let q = s.quiver();
    for _ in 0..50 {
        let (m, n) = random_pair(&s, &mut rng)?;
        let (x, y) = (m.dims(), n.dims());
        let diag: i64 = x.iter().zip(y).map(|(a, b)| (a * b) as i64).sum();
        let off: i64 = q.arrows().iter().map(|a| (x[a.target] * y[a.source]) as i64).sum();
        let e0 = hom(&m, &n).map_err(|e| e.to_string())?.dim() as i64;
        let e1 = ext(&m, &n, 1).map_err(|e| e.to_string())?.dim as i64;
        ensure(e0 - e1 == diag - off, format!("Euler form: {e0} - {e1} vs {}", diag - off))?;
    }
    Ok("d^2 = 0, identity classes, Yoneda on 100 modules, End(+P_i) = A for R and S, Euler form on 50 pairs".into())
}

fn criterion_6() -> Check {
    let (out, _) = qt(&["tilt-verify", "builtin:R", "builtin:T-corrupted", "--field", "F101"])?;
    let text = String::from_utf8_lossy(&out.stdout);
    ensure(!out.status.success() && text.trim_end().ends_with("FAIL"), "corrupted complex was not rejected")?;
    let (out, _) = qt(&["tilt-verify", "builtin:R", "builtin:T", "--field", "F101"])?;
    ensure(out.status.success(), "uncorrupted complex was rejected")?;

    let r = arc(builtin::algebra_r(F101));
    let p1 = Complex::stalk(&Representation::projective(r.clone(), 0), 0);
    let t = TiltingCandidate::new(r.clone(), vec![p1.clone(), p1.shift(1)]).map_err(|e| e.to_string())?;
    let so = verify_self_orthogonal(&t, -3, 3).map_err(|e| e.to_string())?;
    ensure(!so.holds() && so.dim(0, 1, -1) == 1, "{P1, P1[1]} passed self-orthogonality")?;
    ensure(!verify_tilting(&t, &VerifyOptions::default()).map_err(|e| e.to_string())?.pass, "{P1, P1[1]} passed")?;

    let s = builtin::algebra_s(F101);
    let m = match_presentation(r.structure(), &s, None).map_err(|e| e.to_string())?;
    ensure(!m.matches, "R matched S")?;
    Ok(format!("corrupted T rejected; {{P1, P1[1]}} has {} violations; R vs S: {}", so.violations().len(), m.detail))
}

fn criterion_7() -> Check {
    let a = scratch("repro-a.json");
    let b = scratch("repro-b.json");
    for p in [&a, &b] {
        let (out, _) = qt(&["paper-repro", "--seed", "0", "--json", p.to_str().ok_or("non-UTF-8 path")?])?;
        ensure(out.status.success(), format!("qt exited with {}", out.status))?;
    }
    let (x, y) = (std::fs::read(&a).map_err(|e| e.to_string())?, std::fs::read(&b).map_err(|e| e.to_string())?);
    ensure(!x.is_empty() && x == y, "JSON outputs differ")?;
    Ok(format!("{} bytes, identical", x.len()))
}

fn main() -> ExitCode {
    let criteria: [Criterion; 7] = [
        ("worked example over F101 and Q", criterion_1),
        ("finite representation type of R", criterion_2),
        ("global dimensions", criterion_3),
        ("splitting over S, obstruction over R", criterion_4),
        ("invariants", criterion_5),
        ("negative controls", criterion_6),
        ("deterministic JSON", criterion_7),
    ];
    let mut failed = false;
    for (k, (name, check)) in criteria.iter().enumerate() {
        let result = catch_unwind(AssertUnwindSafe(check)).unwrap_or_else(|_| Err("panicked".into()));
        match result {
            Ok(detail) => println!("criterion {}: PASS {name}: {detail}", k + 1),
            Err(why) => {
                failed = true;
                println!("criterion {}: FAIL {name}: {why}", k + 1);
            }
        }
    }
    if failed {
        ExitCode::FAILURE
    } else {
        ExitCode::SUCCESS
    }
}
