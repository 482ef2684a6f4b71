//! Acceptance suite. One test per criterion; each prints a single
//! `criterion N ...: PASS` line on success (visible with `--nocapture`).

mod common;

use common::*;
use imlkit::decide::{
    countermodel_search, definability_check, rule_preservation_check, valid_up_to, SearchBudget,
};
use imlkit::filtration::{
    filtration_lemma_check, is_filtration, largest_filtration, smallest_filtration,
};
use imlkit::proofsys::{check_derivation, parse_script};
use imlkit::semantics::{
    sat, subformula_sat_sets, true_in_model, valid_in_frame, SemanticsVariant,
};
use imlkit::structures::{check_property, FrameClassSpec, FrameProperty};
use imlkit::transform::{
    double_reflexive, double_strict, intersectional_update, partitionize, rooted_join,
    StateOrigin,
};
use imlkit::{parse, Formula};
use rand::Rng;
use std::time::Instant;

const AF: &str = "<>(p->q)->([]p-><>q)";
const AB: &str = "(<>p->[]q)->[](p->q)";
const AD: &str = "[](p|q)-><>p|[]q";

#[test]
fn criterion_01_fixture_reproduction() {
    let started = Instant::now();
    let new = SemanticsVariant::New;

    // the three strictness models refute their confluence axioms
    let m = load_model("prop16_1.json");
    assert!(!sat(&m.model, m.state_id("c").unwrap(), &parse(AF).unwrap(), new));
    let m = load_model("prop16_2.json");
    assert!(!sat(&m.model, m.state_id("a").unwrap(), &parse(AB).unwrap(), new));
    let m = load_model("prop16_3.json");
    assert!(!sat(&m.model, m.state_id("a").unwrap(), &parse(AD).unwrap(), new));

    // the two one-state frames split the disjunction []F | <>T
    let loop_frame = load_model("lemma4_loop.json");
    let empty_frame = load_model("lemma4_empty.json");
    assert!(!valid_in_frame(loop_frame.frame(), &parse("[]F").unwrap()).is_valid());
    assert!(!valid_in_frame(empty_frame.frame(), &parse("<>T").unwrap()).is_valid());
    let disj = parse("[]F|<>T").unwrap();
    assert!(valid_in_frame(loop_frame.frame(), &disj).is_valid());
    assert!(valid_in_frame(empty_frame.frame(), &disj).is_valid());

    // the four-state model separates the Wijesekera clause from the new one
    let m = load_model("prop14.json");
    let a = m.state_id("a").unwrap();
    let dist = parse("<>(p|q)-><>p|<>q").unwrap();
    assert!(!sat(&m.model, a, &dist, SemanticsVariant::Wijesekera));
    assert!(sat(&m.model, a, &dist, new));

    // the six-state model refutes ~<>~p -> []p
    let m = load_model("prop17.json");
    assert!(!sat(
        &m.model,
        m.state_id("a").unwrap(),
        &parse("~<>~p->[]p").unwrap(),
        new
    ));

    // box/diamond independence witnesses
    let m = load_model("lemma23_box.json");
    let (a, c) = (m.state_id("a").unwrap(), m.state_id("c").unwrap());
    let box_p = parse("[]p").unwrap();
    assert!(!sat(&m.model, a, &box_p, new));
    assert!(sat(&m.model, c, &box_p, new));
    let m = load_model("lemma23_dia.json");
    let (a, c) = (m.state_id("a").unwrap(), m.state_id("c").unwrap());
    let dia_p = parse("<>p").unwrap();
    assert!(!sat(&m.model, a, &dia_p, new));
    assert!(sat(&m.model, c, &dia_p, new));

    // the five-state frame is transitive but neither up- nor down-transitive
    let m = load_model("sec3_transitive_witness.json");
    assert!(check_property(m.frame(), "tra").unwrap());
    assert!(!check_property(m.frame(), "utra").unwrap());
    assert!(!check_property(m.frame(), "dtra").unwrap());

    let elapsed = started.elapsed();
    assert!(
        elapsed.as_secs_f64() < 1.0,
        "fixture reproduction took {elapsed:?}, expected < 1 s"
    );
    println!("criterion 01 (fixture reproduction, < 1 s): PASS");
}

#[test]
fn criterion_02_soundness_suite() {
    let axioms_over_all = [
        "[](p->q)->([]p->[]q)",        // A1
        "[](p|q)->((<>p->[]q)->[]q)",  // A2
        "<>(p|q)-><>p|<>q",            // A3
        "~<>F",                        // A4
        "[]p&[]q->[](p&q)",            // A5
        "[]T",                         // A6
    ];
    let all = FrameClassSpec::all();
    for text in axioms_over_all {
        assert!(
            valid_up_to(&parse(text).unwrap(), &all, 3),
            "{text} must have no countermodel up to 3 states"
        );
    }
    let class_axioms = [
        (AF, "fc"),
        (AB, "bc"),
        (AD, "dc"),
        ("[]p->p", "uref"),
        ("p-><>p", "dref"),
        ("<>[]p->p", "usym"),
        ("p->[]<>p", "dsym"),
        ("[]p->[][]p", "utra"),
        ("<><>p-><>p", "dtra"),
    ];
    for (text, class) in class_axioms {
        let spec = FrameClassSpec::parse(class).unwrap();
        assert!(
            valid_up_to(&parse(text).unwrap(), &spec, 3),
            "{text} must be valid over {class} frames up to 3 states"
        );
    }
    println!("criterion 02 (soundness of the axioms at 3 states): PASS");
}

#[test]
fn criterion_03_definability_suite() {
    // quasi-confluence definitions
    let quasi = [
        (AF, FrameProperty::Qfc),
        (AB, FrameProperty::Qbc),
        (AD, FrameProperty::Qdc),
    ];
    for (text, prop) in quasi {
        let outcome = definability_check(&parse(text).unwrap(), prop, 3);
        assert!(outcome.holds, "{text} defines {}", prop.name());
    }
    // the six up/down definitions
    let table4 = [
        ("[]p->p", FrameProperty::Uref),
        ("p-><>p", FrameProperty::Dref),
        ("<>[]p->p", FrameProperty::Usym),
        ("p->[]<>p", FrameProperty::Dsym),
        ("[]p->[][]p", FrameProperty::Utra),
        ("<><>p-><>p", FrameProperty::Dtra),
    ];
    for (text, prop) in table4 {
        let outcome = definability_check(&parse(text).unwrap(), prop, 3);
        assert!(outcome.holds, "{text} defines {}", prop.name());
    }
    // non-definability of plain reflexivity, with the two-state witness pair
    let outcome = definability_check(&parse("[]p->p").unwrap(), FrameProperty::Ref, 2);
    assert!(!outcome.holds);
    let witness = outcome.validating_outside.expect("validating non-reflexive frame");
    assert!(!FrameProperty::Ref.check(&witness));
    assert!(valid_in_frame(&witness, &parse("[]p->p").unwrap()).is_valid());
    let w1 = load_model("lemma9_w1.json");
    let w2 = load_model("lemma9_w2.json");
    assert!(!FrameProperty::Ref.check(w1.frame()));
    assert!(FrameProperty::Ref.check(w2.frame()));
    assert!(valid_in_frame(w1.frame(), &parse("[]p->p").unwrap()).is_valid());
    assert!(valid_in_frame(w2.frame(), &parse("[]p->p").unwrap()).is_valid());
    println!("criterion 03 (definability tables at 3 states): PASS");
}

#[test]
fn criterion_04_heredity_property() {
    let mut rng = rng(11_04);
    for case in 0..1000 {
        let m = rand_model(&mut rng, 6, &["p", "q", "r"]);
        let f = rand_formula(&mut rng, &["p", "q", "r"], 4);
        for (sub, set) in subformula_sat_sets(&m, &f, SemanticsVariant::New) {
            assert!(
                m.frame().is_le_closed(set),
                "case {case}: heredity fails for {sub} on {:?}",
                m.frame()
            );
        }
    }
    println!("criterion 04 (heredity on 1000 random models): PASS");
}

#[test]
fn criterion_05_variant_equivalence_on_fc() {
    let mut rng = rng(11_05);
    for case in 0..500 {
        let m = rand_model_where(&mut rng, 5, &["p", "q"], |f| FrameProperty::Fc.check(f));
        let f = rand_formula(&mut rng, &["p", "q"], 4);
        let new = subformula_sat_sets(&m, &f, SemanticsVariant::New);
        let fs = subformula_sat_sets(&m, &f, SemanticsVariant::FischerServi);
        let wij = subformula_sat_sets(&m, &f, SemanticsVariant::Wijesekera);
        for ((n, s), w) in new.iter().zip(&fs).zip(&wij) {
            assert_eq!(n.1, s.1, "case {case}: FS disagrees on {}", n.0);
            assert_eq!(n.1, w.1, "case {case}: Wijesekera disagrees on {}", n.0);
        }
    }
    // documented divergence on a non-forward-confluent frame
    let nm = load_model("prop16_1_p_at_b.json");
    assert!(!FrameProperty::Fc.check(nm.frame()));
    let dia_p = parse("<>p").unwrap();
    let (a, c) = (nm.state_id("a").unwrap(), nm.state_id("c").unwrap());
    assert!(sat(&nm.model, a, &dia_p, SemanticsVariant::FischerServi));
    assert!(!sat(&nm.model, c, &dia_p, SemanticsVariant::FischerServi));
    assert!(sat(&nm.model, a, &dia_p, SemanticsVariant::New));
    assert!(sat(&nm.model, c, &dia_p, SemanticsVariant::New));
    println!("criterion 05 (variant equivalence on 500 fc models): PASS");
}

#[test]
fn criterion_06_filtration_suite() {
    let mut rng = rng(11_06);
    let preserved = [
        FrameProperty::Ref,
        FrameProperty::Sym,
        FrameProperty::Uref,
        FrameProperty::Dref,
        FrameProperty::Usym,
        FrameProperty::Dsym,
    ];
    for case in 0..1000 {
        let m = rand_model(&mut rng, 6, &["p", "q"]);
        let f = rand_formula(&mut rng, &["p", "q"], 4);
        let sigma = f.closure();
        let (small, setting) = smallest_filtration(&m, &sigma).unwrap();
        let report = is_filtration(&small, &m, &sigma, &setting).unwrap();
        assert!(
            report.all_pass(),
            "case {case}: smallest filtration conditions {:?} for {f}",
            report.conditions
        );
        assert!(
            filtration_lemma_check(&small, &m, &sigma, &setting),
            "case {case}: filtration lemma (smallest) for {f}"
        );
        assert!(small.frame().size() <= 1 << sigma.len().min(63));

        let (large, setting_l) = largest_filtration(&m, &sigma).unwrap();
        let report = is_filtration(&large, &m, &sigma, &setting_l).unwrap();
        assert!(
            report.all_pass(),
            "case {case}: largest filtration conditions {:?} for {f}",
            report.conditions
        );
        assert!(
            filtration_lemma_check(&large, &m, &sigma, &setting_l),
            "case {case}: filtration lemma (largest) for {f}"
        );
        assert!(large.frame().size() <= 1 << sigma.len().min(63));

        // smallest R' is contained in largest R' on the shared carrier
        assert!(small.frame().r().is_subset_of(large.frame().r()));

        for prop in preserved {
            if prop.check(m.frame()) {
                assert!(
                    prop.check(small.frame()),
                    "case {case}: smallest filtration loses {}",
                    prop.name()
                );
            }
        }
    }
    println!("criterion 06 (filtration campaign, 1000 cases): PASS");
}

#[test]
fn criterion_07_transform_suite() {
    let mut rng = rng(11_07);
    let atoms = ["p", "q"];
    let new = SemanticsVariant::New;

    for case in 0..500 {
        // intersectional update preserves every subformula at every state
        let m = rand_model(&mut rng, 5, &atoms);
        let f = rand_formula(&mut rng, &atoms, 4);
        let updated = intersectional_update(&m);
        assert_eq!(
            subformula_sat_sets(&m, &f, new),
            subformula_sat_sets(&updated, &f, new),
            "case {case}: intersectional update changed satisfaction of {f}"
        );

        // strict doubling: transitive output, satisfaction tracks origins
        let (doubled, map) = double_strict(&m);
        assert!(FrameProperty::Tra.check(doubled.frame()));
        let orig = subformula_sat_sets(&m, &f, new);
        for (sub, set) in subformula_sat_sets(&doubled, &f, new) {
            let (_, orig_set) = orig.iter().find(|(g, _)| *g == sub).unwrap();
            for s in 0..doubled.frame().size() {
                let StateOrigin::Copy { state, .. } = map.origin(s) else {
                    panic!()
                };
                assert_eq!(
                    set >> s & 1,
                    orig_set >> state & 1,
                    "case {case}: double_strict claim fails for {sub}"
                );
            }
        }

        // reflexive doubling over a reflexive input
        let m_ref = rand_reflexive_model(&mut rng, 5, &atoms);
        let (doubled, map) = double_reflexive(&m_ref).unwrap();
        assert!(FrameProperty::Ref.check(doubled.frame()));
        assert!(FrameProperty::Tra.check(doubled.frame()));
        let orig = subformula_sat_sets(&m_ref, &f, new);
        for (sub, set) in subformula_sat_sets(&doubled, &f, new) {
            let (_, orig_set) = orig.iter().find(|(g, _)| *g == sub).unwrap();
            for s in 0..doubled.frame().size() {
                let StateOrigin::Copy { state, .. } = map.origin(s) else {
                    panic!()
                };
                assert_eq!(
                    set >> s & 1,
                    orig_set >> state & 1,
                    "case {case}: double_reflexive claim fails for {sub}"
                );
            }
        }

        // partition construction over a reflexive symmetric input
        let m_par = rand_ref_sym_model(&mut rng, 5, &atoms);
        let (part, map) = partitionize(&m_par).unwrap();
        assert!(FrameProperty::Par.check(part.frame()));
        let orig = subformula_sat_sets(&m_par, &f, new);
        for (sub, set) in subformula_sat_sets(&part, &f, new) {
            let (_, orig_set) = orig.iter().find(|(g, _)| *g == sub).unwrap();
            for s in 0..part.frame().size() {
                let StateOrigin::PairClass { state, .. } = map.origin(s) else {
                    panic!()
                };
                assert_eq!(
                    set >> s & 1,
                    orig_set >> state & 1,
                    "case {case}: partitionize claim fails for {sub}"
                );
            }
        }

        // rooted join: old-state satisfaction unchanged, root in no valuation
        let m1 = rand_model(&mut rng, 4, &atoms);
        let m2 = rand_model(&mut rng, 4, &atoms);
        let s1 = rng.gen_range(0..m1.frame().size());
        let s2 = rng.gen_range(0..m2.frame().size());
        let (joined, map) = rooted_join(&m1, s1, &m2, s2);
        for (_, &set) in joined.val() {
            assert_eq!(set & 1, 0, "case {case}: root must satisfy no atom");
            assert!(joined.frame().is_le_closed(set));
        }
        let orig1 = subformula_sat_sets(&m1, &f, new);
        let orig2 = subformula_sat_sets(&m2, &f, new);
        for (i, (sub, set)) in subformula_sat_sets(&joined, &f, new).iter().enumerate() {
            for s in 0..joined.frame().size() {
                match map.origin(s) {
                    StateOrigin::Root => {}
                    StateOrigin::Left(t) => {
                        assert_eq!(
                            set >> s & 1,
                            orig1[i].1 >> t & 1,
                            "case {case}: join claim fails in left part for {sub}"
                        );
                    }
                    StateOrigin::Right(t) => {
                        assert_eq!(
                            set >> s & 1,
                            orig2[i].1 >> t & 1,
                            "case {case}: join claim fails in right part for {sub}"
                        );
                    }
                    _ => panic!(),
                }
            }
        }
    }
    println!("criterion 07 (transform campaign, 500 cases each): PASS");
}

#[test]
fn criterion_08_proof_checker() {
    // all bundled scripts check
    let scripts = [
        ("lemma12.json", false),
        ("lemma13.json", false),
        ("lemma14.json", false),
        ("a5_from_a1.json", true),
        ("a6_from_r1.json", true),
        ("a1_from_a5_a6_r4.json", true),
        ("lemma22_dia_negboxneg.json", false),
        ("lemma22_negboxneg_dia.json", false),
    ];
    let mut bridge_checked = 0usize;
    for (name, is_theorem) in scripts {
        let d = parse_script(&load_script_text(name)).unwrap();
        let report = check_derivation(&d);
        assert!(report.is_ok(), "{name}: {:?}", report.failure);
        assert_eq!(report.conclusion_is_theorem(), is_theorem, "{name}");

        // soundness bridge: every hypothesis-independent line is valid on
        // all 3-state frames of the script's class
        let spec = d.frame_class();
        for (i, line) in d.lines.iter().enumerate() {
            if report.depends_on_hypothesis[i] {
                continue;
            }
            let budget = SearchBudget::with_max_states(3).dedup(true);
            let result = countermodel_search(&line.formula, &spec, &budget);
            assert!(
                result.countermodel().is_none(),
                "{name} line {}: {} refuted on a {spec} frame",
                i + 1,
                line.formula
            );
            bridge_checked += 1;
        }
    }
    assert!(bridge_checked >= 25, "bridge covered {bridge_checked} lines");

    // the lemma 13 conclusion has the advertised shape
    let lemma13 = parse_script(&load_script_text("lemma13.json")).unwrap();
    assert_eq!(
        lemma13.lines.last().unwrap().formula,
        parse("<>(g&(b->c)&h&i&(e->j))->f|d|<>j").unwrap()
    );

    // corrupted scripts are rejected at the right lines
    let cases = [
        ("corrupt_r1_shape.json", 5),
        ("corrupt_lemma14_axiom.json", 4),
        ("corrupt_ref_range.json", 2),
    ];
    for (name, expected_line) in cases {
        let d = parse_script(&load_script_text(name)).unwrap();
        let report = check_derivation(&d);
        let (line, _) = report.failure.expect("corrupted script must fail");
        assert_eq!(line, expected_line, "{name}");
    }
    println!("criterion 08 (bundled proofs check; {bridge_checked} hypothesis-free lines frame-validated): PASS");
}

#[test]
fn criterion_09_rule_preservation() {
    let report = rule_preservation_check(3);
    assert_eq!(report.rules.len(), 4);
    for (rule, instances) in &report.rules {
        for inst in instances {
            assert!(
                inst.preserved,
                "{rule}: {} => {} not preserved",
                inst.premise, inst.conclusion
            );
        }
    }
    println!("criterion 09 (rules R1-R4 preserve validity at 3 states): PASS");
}

#[test]
fn criterion_10_disjunction_property_evidence() {
    let dc = FrameClassSpec::parse("dc").unwrap();
    let disj = parse("[]F|<>T").unwrap();
    assert!(valid_up_to(&disj, &dc, 3));

    let budget = SearchBudget::with_max_states(1);
    let left = countermodel_search(&parse("[]F").unwrap(), &dc, &budget);
    let (model, _) = left.countermodel().expect("[]F fails on a dc frame");
    assert_eq!(model.frame().size(), 1);
    let right = countermodel_search(&parse("<>T").unwrap(), &dc, &budget);
    let (model, _) = right.countermodel().expect("<>T fails on a dc frame");
    assert_eq!(model.frame().size(), 1);

    // the join mechanism: a fresh root below both components satisfies a
    // disjunction only if a component root satisfies a disjunct
    let m1 = load_model("prop16_1.json");
    let m2 = load_model("prop16_2.json");
    let (joined, map) = rooted_join(
        &m1.model,
        m1.state_id("a").unwrap(),
        &m2.model,
        m2.state_id("a").unwrap(),
    );
    let af = parse(AF).unwrap();
    let ab = parse(AB).unwrap();
    let both = Formula::or(af.clone(), ab.clone());
    // old states keep their truth values
    for s in 0..joined.frame().size() {
        match map.origin(s) {
            StateOrigin::Left(t) => {
                for f in [&af, &ab] {
                    assert_eq!(
                        sat(&joined, s, f, SemanticsVariant::New),
                        sat(&m1.model, t, f, SemanticsVariant::New)
                    );
                }
            }
            StateOrigin::Right(t) => {
                for f in [&af, &ab] {
                    assert_eq!(
                        sat(&joined, s, f, SemanticsVariant::New),
                        sat(&m2.model, t, f, SemanticsVariant::New)
                    );
                }
            }
            _ => {}
        }
    }
    // m1 refutes Af above a, m2 refutes Ab above a, so the root gets neither
    assert!(!sat(&joined, 0, &af, SemanticsVariant::New));
    assert!(!sat(&joined, 0, &ab, SemanticsVariant::New));
    assert!(!sat(&joined, 0, &both, SemanticsVariant::New));
    assert!(!true_in_model(&joined, &both, SemanticsVariant::New));
    println!("criterion 10 (disjunction-property evidence at desk scale): PASS");
}
