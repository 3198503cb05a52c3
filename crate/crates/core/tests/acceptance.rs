use knotkit::families::{closed_form_alexander_k, Templates, Variant};
use knotkit::invariants::{
    alexander, alexander_burau, alexander_from_seifert, conway, cover_from_presentation, cyclotomic_resultant,
    determinant_of, double_cover_homology, fox_milnor, goeritz, roots_of_unity_equal, signature,
    wirtinger_presentation, FoxMilnorResult,
};
use knotkit::seifert::{seifert_circles, seifert_matrix};
use knotkit::{BraidWord, LaurentPoly, PlanarDiagram};
use num_bigint::BigInt;

type Outcome = Result<(), String>;

struct Run {
    t: &'static Templates,
    knots: Vec<(String, PlanarDiagram)>,
}

impl Run {
    fn keep(&mut self, name: String, d: &PlanarDiagram) {
        self.knots.push((name, d.clone()));
    }

    fn k(&mut self, n: i64, m: i64) -> Result<PlanarDiagram, String> {
        let d = self.t.knot_k(n, m).map_err(|e| format!("K[{n},{m}]: {e}"))?;
        self.keep(format!("K[{n},{m}]"), &d);
        Ok(d)
    }

    fn r(&mut self, m: i64) -> Result<PlanarDiagram, String> {
        let d = self.t.knot_r(m).map_err(|e| format!("R[{m}]: {e}"))?;
        self.keep(format!("R[{m}]"), &d);
        Ok(d)
    }

    fn twist(&mut self, m: i64, v: Variant, n: i64) -> Result<PlanarDiagram, String> {
        let name = format!("AT[J,{m},{v},{n}]");
        let d = self.t.band_presentation_j(m, v).map_err(|e| e.to_string())?.annulus_twist(n).map_err(|e| format!("{name}: {e}"))?;
        self.keep(name, &d);
        Ok(d)
    }
}

fn delta(d: &PlanarDiagram) -> Result<LaurentPoly, String> {
    alexander(d).map_err(|e| e.to_string())
}

fn seifert_delta(d: &PlanarDiagram) -> Result<LaurentPoly, String> {
    if d.crossing_count() == 0 {
        return Ok(LaurentPoly::one());
    }
    let v = seifert_matrix(d).map_err(|e| e.to_string())?;
    alexander_from_seifert(&v).map_err(|e| e.to_string())
}

fn criterion_1(run: &mut Run) -> Outcome {
    let mut bad = Vec::new();
    for n in [1, 2, 3, -1, -2, -3] {
        for m in 0..=2 {
            let got = seifert_delta(&run.k(n, m)?)?;
            let want = closed_form_alexander_k(n, m).map_err(|e| e.to_string())?;
            if got != want {
                bad.push(format!("K[{n},{m}]: {got} != {want}"));
            }
        }
    }
    if bad.is_empty() { Ok(()) } else { Err(bad.join("; ")) }
}

fn criterion_2(run: &mut Run) -> Outcome {
    let want = LaurentPoly::from_terms([(-2, -1), (0, 3), (2, -1)]);
    for m in 0..=3 {
        let got = delta(&run.r(m)?)?;
        if got != want {
            return Err(format!("R[{m}]: {got}"));
        }
    }
    Ok(())
}

fn criterion_3(run: &mut Run) -> Outcome {
    for n in 2..=6 {
        for m in 0..=1 {
            let (k, r) = (delta(&run.k(n, m)?)?, delta(&run.r(m)?)?);
            if !roots_of_unity_equal(&k, &r, n as u64) {
                return Err(format!("K[{n},{m}] and R[{m}] differ at {n}-th roots of unity"));
            }
        }
    }
    Ok(())
}

fn criterion_4(run: &mut Run) -> Outcome {
    for n in [1, 2, 3, -1, -2, -3] {
        for m in 0..=2 {
            let v = fox_milnor(&delta(&run.k(n, m)?)?);
            if v != FoxMilnorResult::ObstructedNegativeConstant {
                return Err(format!("K[{n},{m}]: {}", v.label()));
            }
        }
    }
    for m in 0..=2 {
        for (name, d) in [(format!("K[0,{m}]"), run.k(0, m)?), (format!("R[{m}]"), run.r(m)?)] {
            let p = delta(&d)?;
            match fox_milnor(&p) {
                FoxMilnorResult::FactorizationFound(f) if (&f * &f.conjugate()).eq_up_to_unit(&p) => {}
                v => return Err(format!("{name}: {}", v.label())),
            }
        }
    }
    Ok(())
}

fn classical(d: &PlanarDiagram) -> Result<String, String> {
    let p = delta(d)?;
    let s = signature(d).map_err(|e| e.to_string())?;
    let h = cover_from_presentation(&wirtinger_presentation(d).map_err(|e| e.to_string())?, 2).map_err(|e| e.to_string())?;
    Ok(format!("{p} | {s} | {} | {:?}", determinant_of(&p), h.invariant_factors))
}

fn criterion_5(run: &mut Run) -> Outcome {
    let mut seen: Option<String> = None;
    for n in -3..=3 {
        let c = classical(&run.twist(1, Variant::Left, n)?)?;
        match &seen {
            Some(s) if *s != c => return Err(format!("n = {n}: {c} vs {s}")),
            _ => seen = Some(c),
        }
    }
    Ok(())
}

fn criterion_6(run: &mut Run) -> Outcome {
    let mut bad = Vec::new();
    for n in 1..=3 {
        let g = delta(&run.twist(2, Variant::Right, n)?)?.span() / 2;
        if g != 2 * n + 2 {
            bad.push(format!("J_2, n = {n}: span/2 = {g}, expected {}", 2 * n + 2));
        }
    }
    for n in -3..=3 {
        let g = delta(&run.twist(1, Variant::Left, n)?)?.span() / 2;
        if g != 2 {
            bad.push(format!("J_1, n = {n}: span/2 = {g}, expected 2"));
        }
    }
    if bad.is_empty() { Ok(()) } else { Err(bad.join("; ")) }
}

fn criterion_7(run: &mut Run) -> Outcome {
    let mut count = 0;
    for b in BraidWord::corpus(6, 3) {
        if b.closure_components() != 1 {
            continue;
        }
        let d = b.closure().map_err(|e| e.to_string())?;
        let (s, r) = (seifert_delta(&d)?, alexander_burau(&b));
        if s != r {
            return Err(format!("{b}: Seifert {s}, Burau {r}"));
        }
        run.keep(b.to_string(), &d);
        count += 1;
    }
    if count < 100 { Err(format!("only {count} identities")) } else { Ok(()) }
}

fn criterion_8(run: &mut Run) -> Outcome {
    let trefoil: PlanarDiagram = "X[1,4,2,5] X[3,6,4,1] X[5,2,6,3]".parse().map_err(|e| format!("{e}"))?;
    let fig8 = BraidWord::new(3, &[1, -2, 1, -2]).and_then(|b| b.closure()).map_err(|e| e.to_string())?;
    run.keep("trefoil".into(), &trefoil);
    run.keep("figure-eight".into(), &fig8);
    let knots = [("trefoil".to_string(), trefoil), ("figure-eight".into(), fig8), ("K[1,0]".into(), run.k(1, 0)?), ("R[0]".into(), run.r(0)?)];
    for (name, d) in knots {
        let p = delta(&d)?;
        let pres = wirtinger_presentation(&d).map_err(|e| e.to_string())?;
        for n in 2..=6u64 {
            let h = cover_from_presentation(&pres, n).map_err(|e| e.to_string())?;
            let order = h.order.unwrap_or_else(|| BigInt::from(0));
            if order != cyclotomic_resultant(&p, n) {
                return Err(format!("{name}, n = {n}: order {order}"));
            }
            if n == 2 {
                let g = double_cover_homology(&goeritz(&d).map_err(|e| e.to_string())?.matrix);
                if order != determinant_of(&p) || g.order != Some(order.clone()) {
                    return Err(format!("{name}: double cover order {order}, det {}", determinant_of(&p)));
                }
            }
        }
    }
    Ok(())
}

fn criterion_9(run: &mut Run) -> Outcome {
    for m in [1, 3] {
        let d = run.t.band_presentation_j(m, Variant::Left).and_then(|bp| Ok(bp.augmented_link()?)).map_err(|e| e.to_string())?;
        if conway(&d).map_err(|e| e.to_string())?.is_zero() {
            return Err(format!("AUG[J,{m},left] has zero Conway polynomial"));
        }
    }
    Ok(())
}

fn properties(d: &PlanarDiagram) -> Outcome {
    let p = delta(d)?;
    if !p.is_symmetric() || p.eval_int(1) != Some(BigInt::from(1)) {
        return Err(format!("Delta = {p}"));
    }
    let s = signature(d).map_err(|e| e.to_string())?;
    if s % 2 != 0 {
        return Err(format!("sigma = {s}"));
    }
    if !determinant_of(&p).bit(0) {
        return Err(format!("det = {}", determinant_of(&p)));
    }
    if d.crossing_count() > 0 {
        let g = seifert_circles(d).map_err(|e| e.to_string())?.genus;
        if p.span() / 2 > g {
            return Err(format!("span/2 = {} > genus {g}", p.span() / 2));
        }
    }
    let m = d.mirror();
    if signature(&m).map_err(|e| e.to_string())? != -s || m.writhe() != -d.writhe() {
        return Err("mirror".into());
    }
    Ok(())
}

fn criterion_10(run: &mut Run) -> Outcome {
    let mut knots = std::mem::take(&mut run.knots);
    knots.sort_by(|a, b| a.0.cmp(&b.0));
    knots.dedup_by(|a, b| a.0 == b.0);
    for (name, d) in &knots {
        properties(d).map_err(|e| format!("{name}: {e}"))?;
    }
    Ok(())
}

fn main() {
    let mut run = Run { t: Templates::builtin(), knots: Vec::new() };
    let criteria: [(&str, fn(&mut Run) -> Outcome); 10] = [
        ("Seifert-path Delta(K_{n,m}) equals the closed form on the 18-point grid", criterion_1),
        ("Delta(R(m)) = 3 - t^2 - t^-2 for m = 0..3", criterion_2),
        ("Delta(K_{n,m}) and Delta(R(m)) agree at n-th roots of unity, n = 2..6, m = 0,1", criterion_3),
        ("Fox-Milnor obstructs K_{n,m} for n != 0 and factors K_{0,m} and R(m)", criterion_4),
        ("annulus twists of J_1 share Delta, sigma, det and H_1 of the double cover", criterion_5),
        ("span/2 is 2n+2 for twists of J_2 and 2 for twists of J_1", criterion_6),
        ("Seifert and Burau Delta agree on at least 100 braid knot closures", criterion_7),
        ("branched-cover orders equal cyclotomic resultants, and |Delta(-1)| at n = 2", criterion_8),
        ("augmented links of J_1 and J_3 have nonzero Conway polynomial", criterion_9),
        ("property suite over every knot above", criterion_10),
    ];
    for (i, (name, f)) in criteria.iter().enumerate() {
        match f(&mut run) {
            Ok(()) => println!("PASS criterion {}: {name}", i + 1),
            Err(e) => println!("FAIL criterion {}: {name}: {e}", i + 1),
        }
    }
}
