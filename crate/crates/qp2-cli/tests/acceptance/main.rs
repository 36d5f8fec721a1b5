//! Acceptance suite: one test per criterion, exercised through the CLI
//! binary wherever the check is expressible as an invocation, with library
//! assertions for relation-space equalities. All arithmetic is exact; cubic
//! comparisons are equality up to a nonzero scalar where stated.

mod support;

use qp2::commalg::{projective_empty, Emptiness};
use qp2::field::Field;
use qp2::ncpoly::{spans_equal, GenCtx};
use qp2::parse::{parse_commpoly, parse_matrix, parse_ncpoly_list, parse_scalar};
use qp2::pointscheme::{classify_cubic, multilinearize};
use qp2::quadalg::{ore_extension, QuadraticAlgebra};
use support::*;

fn report(criterion: &str, ok: bool) {
    println!(
        "criterion {}: {}",
        criterion,
        if ok { "PASS" } else { "FAIL" }
    );
    assert!(ok, "criterion {} failed", criterion);
}

#[test]
fn criterion_01_nodal_reproduction() {
    let f = q();
    for lambda in [2i64, -1, 3] {
        // cubic and class through the CLI
        let spec = write_spec(
            &format!("c1-nodal-{}", lambda),
            &spec_catalog("char = 0", "nodal", &[("lambda", &lambda.to_string())]),
        );
        let (code, doc) = run_cli_json(&[
            "point-scheme",
            "--spec",
            spec.to_str().unwrap(),
            "--classify",
        ]);
        assert_eq!(code, 0);
        let cubic = parse_commpoly(doc["cubic"].as_str().unwrap(), &f).unwrap();
        let expected = {
            let k = lambda * lambda * lambda - 1;
            parse_commpoly(
                &format!("({l})*x^3 + ({l})*y^3 + ({k})*x*y*z", l = lambda, k = k),
                &f,
            )
            .unwrap()
        };
        assert!(
            cubic.proportional_to(&expected),
            "cubic mismatch at lambda = {}",
            lambda
        );
        assert_eq!(doc["class"].as_str(), Some("Nodal"));

        // automorphism values on the parametrized curve, graph form
        let graph_spec = write_spec(
            &format!("c1-graph-{}", lambda),
            &spec_inline("char = 0", "x1, x2, x3", &nodal_graph_relations_src(lambda)),
        );
        for a in [1i64, -1, 2] {
            let point = format!("{},{},{}", a * a, a, -a * a * a - 1);
            let (code, doc) = run_cli_json(&[
                "point-scheme",
                "--spec",
                graph_spec.to_str().unwrap(),
                "--sigma",
                &point,
            ]);
            assert_eq!(code, 0, "sigma evaluation failed at a = {}", a);
            let image = point_from_json(&doc["sigma"]["image"], &f);
            let l = lambda;
            let expected = normalize(&[
                f.scalar_from_i64(l * l * a * a),
                f.scalar_from_i64(l * a),
                f.scalar_from_i64(-l * l * l * a * a * a - 1),
            ]);
            assert_eq!(image, expected, "sigma at lambda={}, a={}", lambda, a);
        }
    }
    report("1 (nodal reproduction)", true);
}

#[test]
fn criterion_02_nodal_dual() {
    let f = q();
    for lambda in [2i64, -1, 3] {
        let l = f.scalar_from_i64(lambda);
        let l3m1 = l.mul(&l).mul(&l).sub(&f.one());
        let nodal = catalog_algebra("nodal", &f, &[("lambda", &lambda.to_string())]);
        // undo the generator normalization to reach the graph-form span
        let m = parse_matrix(
            &format!("1,0,0; 0,1,0; 0,0,({})", l.mul(&l3m1.inv())),
            &f,
        )
        .unwrap();
        let graph = nodal.substitute_generators(&m).unwrap();
        let dual = graph.koszul_dual();
        let quoted = catalog_algebra("nodal_dual", &f, &[("lambda", &lambda.to_string())]);
        assert!(
            dual.relation_space_equals(&quoted),
            "dual relation space differs from the quoted six at lambda = {}",
            lambda
        );
        // the dual of the normalized algebra differs exactly by the dual
        // substitution z3 -> (lambda^{-1}(lambda^3-1)) z3
        let dual_norm = nodal.koszul_dual();
        let dual_sub = parse_matrix(
            &format!("1,0,0; 0,1,0; 0,0,({})", l.inv().mul(&l3m1)),
            &f,
        )
        .unwrap();
        let moved = dual_norm.substitute_generators(&dual_sub).unwrap();
        assert!(
            moved.relation_space_equals(&quoted),
            "dual substitution bookkeeping fails at lambda = {}",
            lambda
        );
    }
    // dual Hilbert function through the CLI
    let spec = write_spec(
        "c2-nodal-dual",
        &spec_catalog("char = 0", "nodal_dual", &[("lambda", "2")]),
    );
    let (code, doc) = run_cli_json(&[
        "hilbert",
        "--spec",
        spec.to_str().unwrap(),
        "--max-degree",
        "4",
    ]);
    assert_eq!(code, 0);
    assert_eq!(doc["dimensions"], serde_json::json!([1, 3, 3, 1, 0]));
    report("2 (nodal dual)", true);
}

#[test]
fn criterion_03_gsca_bridge() {
    // lambda = -1 skew ring with the three quadrics
    let spec = write_spec(
        "c3-skew",
        &spec_inline(
            "char = 0",
            "z1, z2, z3",
            "z1*z2 - z2*z1 ; z2*z3 - z3*z2 ; z3*z1 - z1*z3",
        ),
    );
    let (code, doc) = run_cli_json(&[
        "gsca",
        "--spec",
        spec.to_str().unwrap(),
        "--quadrics",
        "z3^2 ; z2^2 + z1*z3 ; z1^2 + z3*z2",
    ]);
    assert_eq!(code, 0, "regularity check must pass");
    assert_eq!(doc["verdict"].as_str(), Some("pass"));
    let f = q();
    let nodal = catalog_algebra("nodal", &f, &[("lambda", "-1")]);
    let dual_rels = relations_from_json(&doc["dual_relations"], nodal.ctx());
    assert!(
        spans_equal(&dual_rels, nodal.relations()).unwrap(),
        "returned dual must be the nodal algebra at lambda = -1"
    );
    report("3 (skew Clifford bridge at lambda = -1)", true);
}

#[test]
fn criterion_04_cuspidal_reproduction() {
    let f = q();
    let spec = write_spec("c4-cusp", &spec_catalog("char = 0", "cuspidal", &[]));
    let (code, doc) = run_cli_json(&[
        "point-scheme",
        "--spec",
        spec.to_str().unwrap(),
        "--classify",
    ]);
    assert_eq!(code, 0);
    let cubic = parse_commpoly(doc["cubic"].as_str().unwrap(), &f).unwrap();
    let expected = parse_commpoly("3*y^3 + 3*x^2*z", &f).unwrap();
    assert!(cubic.proportional_to(&expected));
    assert_eq!(doc["class"].as_str(), Some("Cuspidal"));

    // characteristic 3: the determinant vanishes identically
    let spec3 = write_spec("c4-cusp3", &spec_catalog("char = 3", "cuspidal", &[]));
    let (code, doc) = run_cli_json(&["point-scheme", "--spec", spec3.to_str().unwrap()]);
    assert_eq!(code, 0);
    assert_eq!(doc["cubic"].as_str(), Some("0"));

    // the characteristic-3 candidate family overshoots in degree 3
    let cand = write_spec(
        "c4-cand",
        &spec_catalog(
            "char = 3",
            "cusp_char3_candidate",
            &[("lambda1", "2"), ("lambda2", "0")],
        ),
    );
    let (code, doc) = run_cli_json(&[
        "hilbert",
        "--spec",
        cand.to_str().unwrap(),
        "--max-degree",
        "3",
    ]);
    assert_eq!(code, 0);
    assert_eq!(doc["dimensions"], serde_json::json!([1, 3, 6, 9]));
    report("4 (cuspidal reproduction)", true);
}

#[test]
fn criterion_05_ore_validations() {
    let f = q();
    // the three catalog Ore data validate and reproduce the quoted spans
    let nodal_data = qp2::catalog::nodal_ore_data(&f, &f.scalar_from_i64(2)).unwrap();
    assert_eq!(nodal_data.validate().unwrap(), qp2::quadalg::OreValidation::Ok);
    let nodal_ext = ore_extension(&nodal_data, "x3").unwrap();
    let nodal = catalog_algebra("nodal", &f, &[("lambda", "2")]);
    assert!(spans_equal(nodal_ext.relations(), nodal.relations()).unwrap());

    let cusp_data = qp2::catalog::cuspidal_ore_data(&f).unwrap();
    assert_eq!(cusp_data.validate().unwrap(), qp2::quadalg::OreValidation::Ok);
    let cusp_ext = ore_extension(&cusp_data, "x3").unwrap();
    let cuspidal = catalog_algebra("cuspidal", &f, &[]);
    assert!(spans_equal(cusp_ext.relations(), cuspidal.relations()).unwrap());

    let p12_data =
        qp2::catalog::prop12_ore_data(&f, 2, &f.scalar_from_i64(2), &f.one(), &f.one(), &f.one())
            .unwrap();
    assert_eq!(p12_data.validate().unwrap(), qp2::quadalg::OreValidation::Ok);
    let p12_ext = ore_extension(&p12_data, "z").unwrap();
    let expected = {
        let ctx = p12_ext.ctx().clone();
        parse_ncpoly_list(
            "xp*y - y*xp ; z*y - 2*y*z + xp^2 + xp*y + xp*z ; z*xp - xp*z",
            &ctx,
        )
        .unwrap()
    };
    assert!(spans_equal(p12_ext.relations(), &expected).unwrap());

    // Hilbert additivity through degree 4
    for (data, ext) in [
        (&nodal_data, &nodal_ext),
        (&cusp_data, &cusp_ext),
        (&p12_data, &p12_ext),
    ] {
        let hb = data.base().hilbert(4).unwrap();
        let he = ext.hilbert(4).unwrap();
        for d in 0..=4 {
            let sum: usize = hb[..=d].iter().sum();
            assert_eq!(he[d], sum);
        }
    }

    // the same flow through the CLI, including a corrupted-delta failure
    let base = write_spec(
        "c5-base",
        &spec_inline("char = 0", "x1, x2", "2*x1*x2 - x2*x1"),
    );
    let run = run_cli(&[
        "ore",
        "--spec",
        base.to_str().unwrap(),
        "--phi",
        "1/2,0; 0,2",
        "--delta",
        "x1=-1/2*x2^2,x2=x1^2",
        "--name",
        "x3",
    ]);
    assert_eq!(run.code, 0, "valid Ore data must pass: {}", run.stderr);
    let bad = run_cli(&[
        "ore",
        "--spec",
        base.to_str().unwrap(),
        "--phi",
        "1/2,0; 0,2",
        "--delta",
        "x1=-1/2*x2^2,x2=x2^2",
        "--name",
        "x3",
    ]);
    assert_eq!(bad.code, 1, "corrupted delta must fail validation");
    report("5 (Ore validations)", true);
}

#[test]
fn criterion_06_type_h() {
    let spec = write_spec(
        "c6-s",
        &spec_inline(
            "char = 0\nminpoly = t^2 + 1",
            "X, Y, Z",
            "Y*X + X*Y ; Y*Z - t*Z*Y ; Z*X - t*X*Z",
        ),
    );
    let (code, doc) = run_cli_json(&[
        "gsca",
        "--spec",
        spec.to_str().unwrap(),
        "--quadrics",
        "X*Z ; t*X*Y - Z^2 ; X^2 + Y^2",
    ]);
    assert_eq!(code, 0);
    assert_eq!(doc["verdict"].as_str(), Some("pass"));
    let qi = q_i();
    let type_h = catalog_algebra("typeH", &qi, &[]);
    let dual_rels = relations_from_json(&doc["dual_relations"], type_h.ctx());
    assert!(
        spans_equal(&dual_rels, type_h.relations()).unwrap(),
        "returned dual must be the type H algebra"
    );
    report("6 (type H)", true);
}

#[test]
fn criterion_07_type_b_boundary() {
    // over F_7: a = 2 passes, a = 3 hits a^2 - a + 1 = 0 and fails at the
    // emptiness stage with a checkable witness
    let s7 = write_spec(
        "c7-s7",
        &spec_inline(
            "char = 7",
            "X, Y, Z",
            "Y*X - X*Y ; Y*Z + Z*Y ; Z*X + X*Z",
        ),
    );
    let quadrics = |a: &str| {
        format!(
            "({a})*Z*X - Z*Y ; X^2 + Y^2 - X*Y ; ({a})*X^2 + Y^2 + Z^2",
            a = a
        )
    };
    let (code, _) = run_cli_json(&[
        "gsca",
        "--spec",
        s7.to_str().unwrap(),
        "--quadrics",
        &quadrics("2"),
    ]);
    assert_eq!(code, 0, "a = 2 must pass over F_7");

    let (code, doc) = run_cli_json(&[
        "gsca",
        "--spec",
        s7.to_str().unwrap(),
        "--quadrics",
        &quadrics("3"),
    ]);
    assert_eq!(code, 1, "a = 3 must fail over F_7");
    assert_eq!(doc["verdict"].as_str(), Some("fail"));
    assert_eq!(doc["stage"].as_str(), Some("empty-locus"));
    // verify the witness kills the stacked system
    let f7 = Field::prime(7).unwrap();
    let witness = point_from_json(&doc["witness"]["point"], &f7);
    verify_stacked_witness(&f7, "3", &witness);

    // the same boundary over Q with a root of a^2 - a + 1 adjoined
    let sw = write_spec(
        "c7-sw",
        &spec_inline(
            "char = 0\nminpoly = t^2 - t + 1",
            "X, Y, Z",
            "Y*X - X*Y ; Y*Z + Z*Y ; Z*X + X*Z",
        ),
    );
    let (code, doc) = run_cli_json(&[
        "gsca",
        "--spec",
        sw.to_str().unwrap(),
        "--quadrics",
        &quadrics("t"),
    ]);
    assert_eq!(code, 1, "a = t must fail over Q(t)/(t^2 - t + 1)");
    assert_eq!(doc["verdict"].as_str(), Some("fail"));
    assert_eq!(doc["stage"].as_str(), Some("empty-locus"));
    let qw = q_w6();
    let witness = point_from_json(&doc["witness"]["point"], &qw);
    verify_stacked_witness(&qw, "t", &witness);
    report("7 (type B boundary)", true);
}

fn verify_stacked_witness(field: &Field, a: &str, witness: &[qp2::field::Scalar]) {
    let ctx = GenCtx::new(field, &["X", "Y", "Z"]).unwrap();
    let rels = parse_ncpoly_list("Y*X - X*Y ; Y*Z + Z*Y ; Z*X + X*Z", &ctx).unwrap();
    let quads = parse_ncpoly_list(
        &format!("({a})*Z*X - Z*Y ; X^2 + Y^2 - X*Y ; ({a})*X^2 + Y^2 + Z^2"),
        &ctx,
    )
    .unwrap();
    let s = QuadraticAlgebra::new(&ctx, &rels).unwrap();
    let stacked = multilinearize(&s.with_relations(&quads).unwrap());
    let kernel = stacked.matrix_at(witness).kernel();
    assert!(
        !kernel.is_empty(),
        "witness must drop the rank of the stacked system"
    );
}

#[test]
fn criterion_08_type_a() {
    let spec = write_spec(
        "c8-s",
        &spec_inline(
            "char = 0",
            "X, Y, Z",
            "Y*X - X*Y ; Z*Y - Y*Z ; X*Z - Z*X",
        ),
    );
    let (code, doc) = run_cli_json(&[
        "gsca",
        "--spec",
        spec.to_str().unwrap(),
        "--quadrics",
        "2*X*Y - Z^2 ; 2*Y*Z - X^2 ; 2*Z*X - Y^2",
    ]);
    assert_eq!(code, 0);
    assert_eq!(doc["verdict"].as_str(), Some("pass"));
    let f = q();
    let type_a = catalog_algebra("typeA", &f, &[("a", "1"), ("b", "1"), ("c", "2")]);
    let dual_rels = relations_from_json(&doc["dual_relations"], type_a.ctx());
    assert!(spans_equal(&dual_rels, type_a.relations()).unwrap());

    // the cyclic permutation twist shifts the parameters one place left
    let tau = parse_matrix("0,0,1; 1,0,0; 0,1,0", &f).unwrap();
    for (a, b, c) in [("1", "1", "2"), ("1", "2", "3"), ("2", "1", "1")] {
        let original = catalog_algebra("typeA", &f, &[("a", a), ("b", b), ("c", c)]);
        let twisted = original.twist(&tau).unwrap();
        let shifted = catalog_algebra("typeA", &f, &[("a", b), ("b", c), ("c", a)]);
        assert!(
            twisted.relation_space_equals(&shifted),
            "cyclic twist mismatch for ({}, {}, {})",
            a,
            b,
            c
        );
    }
    report("8 (type A)", true);
}

#[test]
fn criterion_09_cubic_classifier_battery() {
    // normal forms and the worked family, through the CLI
    let cases: Vec<(&str, &str, &str)> = vec![
        ("x^3 + y^3 + x*y*z", "0", "Nodal"),
        ("y^3 + x^2*z", "0", "Cuspidal"),
        ("y^3 + x^2*z + x*y^2", "3", "Cuspidal"),
        ("x*y*z", "0", "Triangle"),
        ("z^3", "0", "TripleLine"),
        ("(3*x*y + z^2)*z", "0", "ConicPlusSecantLine"),
        ("x^3 + y^3 + z^3 + x*y*z", "0", "Elliptic"),
        // alpha = (2,2,2), mu = 1: coefficient 2 - 8 = -6, three lines
        ("2*x^3 + 2*y^3 + 2*z^3 - 6*x*y*z", "0", "Triangle"),
    ];
    for (poly, field, expected) in &cases {
        let (code, doc) = run_cli_json(&[
            "classify-cubic",
            "--poly",
            poly,
            "--field",
            field,
        ]);
        assert_eq!(code, 0, "classify failed for {}", poly);
        assert_eq!(
            doc["class"].as_str(),
            Some(*expected),
            "wrong class for {}",
            poly
        );
    }

    // expected classes of the worked skew Clifford family, cases 2-6
    let f = q();
    let gsca_cases: Vec<(&str, Vec<(&str, &str)>)> = vec![
        ("Triangle", vec![("case", "2"), ("mu12", "1"), ("mu13", "2"), ("mu23", "1"), ("alpha1", "0"), ("alpha2", "0"), ("alpha3", "0")]),
        ("TripleLine", vec![("case", "3"), ("mu12", "-1"), ("mu13", "1"), ("mu23", "1"), ("alpha1", "0"), ("alpha2", "0"), ("alpha3", "1")]),
        ("ConicPlusSecantLine", vec![("case", "4"), ("mu12", "1"), ("mu13", "1"), ("mu23", "1"), ("alpha1", "0"), ("alpha2", "0"), ("alpha3", "1")]),
        ("Nodal", vec![("case", "5"), ("mu12", "1"), ("mu13", "1"), ("mu23", "1"), ("alpha1", "0"), ("alpha2", "1"), ("alpha3", "1")]),
        ("Elliptic", vec![("case", "6"), ("mu12", "1"), ("mu13", "1"), ("mu23", "1"), ("alpha1", "1"), ("alpha2", "1"), ("alpha3", "1")]),
    ];
    for (expected, kv) in &gsca_cases {
        let built = qp2::catalog::build("example_gsca", &params(&f, kv), &f, false).unwrap();
        let sys = multilinearize(&built.algebra);
        let det = sys.pointscheme_cubic().unwrap();
        let exp_cubic = built.expected.cubic.as_ref().unwrap();
        assert!(
            det.proportional_to(exp_cubic),
            "determinant differs from the expected divisor for {:?}",
            kv
        );
        let class = classify_cubic(&det).unwrap();
        assert_eq!(&class.tag(), expected, "class mismatch for {:?}", kv);
    }

    // invariance of every verdict under 30 random invertible substitutions
    let mut rng = Lcg(0x2024);
    for (poly, field_spec, expected) in &cases {
        let field = if *field_spec == "0" {
            q()
        } else {
            Field::prime(field_spec.parse().unwrap()).unwrap()
        };
        let p = parse_commpoly(poly, &field).unwrap();
        for _ in 0..30 {
            let m = rng.invertible_matrix(&field, 3);
            let moved = p.substitute_linear(&m).unwrap();
            let class = classify_cubic(&moved).unwrap();
            assert_eq!(
                class.tag(),
                *expected,
                "verdict for {} not invariant under substitution",
                poly
            );
        }
    }
    report("9 (cubic classifier battery)", true);
}

#[test]
fn criterion_10_concurrent_lines_obstruction() {
    // dual side: Hilbert function 1, 3, 3, 0 at b a primitive cube root
    let spec = write_spec(
        "c10-dual",
        &spec_catalog(
            "char = 0\nminpoly = t^2 + t + 1",
            "prop17_dual",
            &[("a", "1"), ("b", "t"), ("c", "1"), ("e", "1")],
        ),
    );
    let (code, doc) = run_cli_json(&[
        "hilbert",
        "--spec",
        spec.to_str().unwrap(),
        "--max-degree",
        "3",
    ]);
    assert_eq!(code, 0);
    assert_eq!(doc["dimensions"], serde_json::json!([1, 3, 3, 0]));

    // characteristic 3, b = 1: the primal algebra has the right growth
    let spec3 = write_spec(
        "c10-star",
        &spec_catalog(
            "char = 3",
            "prop2_star",
            &[("a", "1"), ("c", "1"), ("e", "1")],
        ),
    );
    let (code, doc) = run_cli_json(&[
        "hilbert",
        "--spec",
        spec3.to_str().unwrap(),
        "--max-degree",
        "3",
    ]);
    assert_eq!(code, 0);
    assert_eq!(doc["dimensions"], serde_json::json!([1, 3, 6, 10]));
    report("10 (concurrent-lines obstruction)", true);
}

#[test]
fn criterion_11_property_suites() {
    let f = q();
    let f3 = Field::prime(3).unwrap();
    let instances: Vec<(String, QuadraticAlgebra)> = vec![
        ("nodal(2)".into(), catalog_algebra("nodal", &f, &[("lambda", "2")])),
        ("cuspidal".into(), catalog_algebra("cuspidal", &f, &[])),
        ("typeH".into(), catalog_algebra("typeH", &q_i(), &[])),
        ("typeB(2)".into(), catalog_algebra("typeB", &f, &[("a", "2")])),
        (
            "typeA(1,1,2)".into(),
            catalog_algebra("typeA", &f, &[("a", "1"), ("b", "1"), ("c", "2")]),
        ),
        ("skew3(2)".into(), catalog_algebra("skew3", &f, &[("c", "2")])),
        (
            "lemma16(1,1,1)".into(),
            catalog_algebra("lemma16", &f, &[("d", "1"), ("e", "1"), ("f", "1")]),
        ),
        (
            "prop2_star".into(),
            catalog_algebra("prop2_star", &f3, &[("a", "1"), ("c", "1"), ("e", "1")]),
        ),
        (
            "nodal_dual(2)".into(),
            catalog_algebra("nodal_dual", &f, &[("lambda", "2")]),
        ),
        (
            "cusp_char3_candidate".into(),
            catalog_algebra(
                "cusp_char3_candidate",
                &f3,
                &[("lambda1", "2"), ("lambda2", "0")],
            ),
        ),
    ];
    let mut rng = Lcg(0x11);
    for (name, algebra) in &instances {
        // perp involution
        let dual = algebra.koszul_dual();
        assert_eq!(
            algebra.dim_relations() + dual.dim_relations(),
            algebra.ngens() * algebra.ngens()
        );
        assert!(
            algebra.relation_space_equals(&dual.koszul_dual()),
            "perp involution fails for {}",
            name
        );
        // twist involution
        for _ in 0..10 {
            let phi = rng.invertible_matrix(algebra.field(), algebra.ngens());
            let back = algebra
                .twist(&phi)
                .unwrap()
                .twist(&phi.inverse().unwrap())
                .unwrap();
            assert!(back.relation_space_equals(algebra), "twist involution fails for {}", name);
        }
        // substitution Hilbert invariance
        let base = algebra.hilbert(4).unwrap();
        let m = rng.invertible_matrix(algebra.field(), algebra.ngens());
        assert_eq!(
            algebra.substitute_generators(&m).unwrap().hilbert(4).unwrap(),
            base,
            "substitution changed dimensions for {}",
            name
        );
        // Groebner Hilbert vs the brute-force quotient oracle
        assert_eq!(
            base,
            oracle_hilbert(algebra, 4),
            "oracle disagrees for {}",
            name
        );
    }

    // twist Hilbert invariance for an automorphism (the cyclic symmetry of
    // the type A family)
    let type_a = catalog_algebra("typeA", &f, &[("a", "1"), ("b", "1"), ("c", "2")]);
    let tau = parse_matrix("0,0,1; 1,0,0; 0,1,0", &f).unwrap();
    assert_eq!(
        type_a.twist(&tau).unwrap().hilbert(4).unwrap(),
        type_a.hilbert(4).unwrap()
    );

    // emptiness vs enumeration over small prime fields
    for p in [5u64, 7, 11] {
        let fp = Field::prime(p).unwrap();
        let gens = vec![
            parse_commpoly("2*x*y - z^2", &fp).unwrap(),
            parse_commpoly("2*y*z - x^2", &fp).unwrap(),
            parse_commpoly("2*z*x - y^2", &fp).unwrap(),
        ];
        let brute = {
            let elems = fp.enumerate().unwrap();
            let mut points = Vec::new();
            for y in &elems {
                for z in &elems {
                    points.push(vec![fp.one(), y.clone(), z.clone()]);
                }
            }
            for z in &elems {
                points.push(vec![fp.zero(), fp.one(), z.clone()]);
            }
            points.push(vec![fp.zero(), fp.zero(), fp.one()]);
            points
                .into_iter()
                .any(|pt| gens.iter().all(|g| g.eval(&pt).is_zero()))
        };
        match projective_empty(&gens, 12).unwrap() {
            Emptiness::Empty { .. } => assert!(!brute, "enumeration disagrees over F_{}", p),
            Emptiness::NonEmpty { .. } => assert!(brute, "enumeration disagrees over F_{}", p),
            Emptiness::Inconclusive => assert!(!brute, "shallow zero missed over F_{}", p),
        }
    }

    // graph property: sampled curve points map into the curve
    for name in ["nodal", "cuspidal"] {
        let algebra = if name == "nodal" {
            catalog_algebra("nodal", &f, &[("lambda", "2")])
        } else {
            catalog_algebra("cuspidal", &f, &[])
        };
        let sys = multilinearize(&algebra);
        let cubic = sys.pointscheme_cubic().unwrap();
        let samples = sys.sample_curve_points(5).unwrap();
        assert!(samples.len() >= 3, "too few samples for {}", name);
        assert!(sys.verify_graph(&samples).unwrap());
        for pt in &samples {
            let image = sys.sigma_eval(pt).unwrap();
            assert!(cubic.eval(&image).is_zero());
        }
    }
    report("11 (property suites)", true);
}

#[test]
fn criterion_12_extension_fitting() {
    // lambda a primitive cube root of unity: the automorphism extends to the
    // plane and the fitted twist linearizes the relations to commutators
    let spec = write_spec(
        "c12-omega",
        &spec_inline(
            "char = 0\nminpoly = t^2 + t + 1",
            "x1, x2, x3",
            "t*x1*x2 - x2*x1 ; t^2*x2*x3 - t*x3*x2 ; t^2*x3*x1 - t*x1*x3",
        ),
    );
    let (code, doc) = run_cli_json(&[
        "point-scheme",
        "--spec",
        spec.to_str().unwrap(),
        "--fit-extension",
    ]);
    assert_eq!(code, 0);
    assert_eq!(doc["fit_extension"]["found"].as_bool(), Some(true));
    // rebuild the fitted matrix and check the twist by its inverse turns the
    // relation space into the commutator space
    let qw = q_w3();
    let ctx = GenCtx::new(&qw, &["x1", "x2", "x3"]).unwrap();
    let rels = parse_ncpoly_list(
        "t*x1*x2 - x2*x1 ; t^2*x2*x3 - t*x3*x2 ; t^2*x3*x1 - t*x1*x3",
        &ctx,
    )
    .unwrap();
    let algebra = QuadraticAlgebra::new(&ctx, &rels).unwrap();
    let rows: Vec<Vec<qp2::field::Scalar>> = doc["fit_extension"]["matrix"]
        .as_array()
        .unwrap()
        .iter()
        .map(|row| {
            row.as_array()
                .unwrap()
                .iter()
                .map(|c| parse_scalar(c.as_str().unwrap(), &qw).unwrap())
                .collect()
        })
        .collect();
    let t_matrix = qp2::linalg::Matrix::from_rows(&qw, rows);
    let twisted = algebra.twist(&t_matrix.inverse().unwrap()).unwrap();
    let commutators = parse_ncpoly_list(
        "x1*x2 - x2*x1 ; x1*x3 - x3*x1 ; x2*x3 - x3*x2",
        &ctx,
    )
    .unwrap();
    assert!(
        spans_equal(twisted.relations(), &commutators).unwrap(),
        "fitted twist must linearize to the commutator space"
    );

    // generic nodal parameter: no linear extension exists
    let spec2 = write_spec(
        "c12-generic",
        &spec_inline("char = 0", "x1, x2, x3", &nodal_graph_relations_src(2)),
    );
    let (code, doc) = run_cli_json(&[
        "point-scheme",
        "--spec",
        spec2.to_str().unwrap(),
        "--fit-extension",
    ]);
    assert_eq!(code, 0);
    assert_eq!(doc["fit_extension"]["found"].as_bool(), Some(false));
    report("12 (extension fitting)", true);
}
