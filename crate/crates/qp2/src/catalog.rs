//! Parameterized constructors for the named quadratic algebras of the
//! workbench, each bundled with the metadata golden tests compare against
//! (expected point-scheme cubic, cubic class, Hilbert prefix).

use crate::commalg::CommPoly;
use crate::field::{Field, FieldError, Scalar};
use crate::linalg::Matrix;
use crate::ncpoly::{GenCtx, NcPoly};
use crate::parse::{parse_ncpoly, ParseError};
use crate::quadalg::{OreData, QuadError, QuadraticAlgebra};
use std::collections::BTreeMap;
use thiserror::Error;

#[derive(Debug, Error, Clone, PartialEq, Eq)]
pub enum CatalogError {
    #[error("unknown catalog entry `{0}`")]
    UnknownEntry(String),
    #[error("missing parameter `{0}`")]
    MissingParam(String),
    #[error("unexpected parameter `{0}`")]
    UnexpectedParam(String),
    #[error("constraint violated: {0}")]
    ConstraintViolation(String),
    #[error("entry requires {0}")]
    FieldUnsupported(String),
    #[error(transparent)]
    Quad(#[from] QuadError),
    #[error(transparent)]
    Field(#[from] FieldError),
    #[error(transparent)]
    Parse(#[from] ParseError),
}

/// Expected metadata attached to a built algebra, for golden testing.
#[derive(Clone, Debug, Default)]
pub struct Expected {
    pub cubic: Option<CommPoly>,
    pub cubic_class: Option<&'static str>,
    pub hilbert_prefix: Option<Vec<usize>>,
}

#[derive(Clone, Debug)]
pub struct Built {
    pub algebra: QuadraticAlgebra,
    pub expected: Expected,
}

/// Registry description of one entry.
#[derive(Clone, Debug)]
pub struct CatalogEntry {
    pub name: &'static str,
    pub params: &'static [&'static str],
    pub summary: &'static str,
}

pub fn entries() -> Vec<CatalogEntry> {
    vec![
        CatalogEntry {
            name: "nodal",
            params: &["lambda"],
            summary: "one-parameter family with nodal point scheme; needs lambda*(lambda^3-1) != 0",
        },
        CatalogEntry {
            name: "cuspidal",
            params: &[],
            summary: "the algebra with cuspidal point scheme (degenerates in characteristic 3)",
        },
        CatalogEntry {
            name: "typeH",
            params: &[],
            summary: "elliptic type H algebra; the field must contain a primitive fourth root of unity",
        },
        CatalogEntry {
            name: "typeB",
            params: &["a"],
            summary: "elliptic type B family; needs a*(a-1) != 0, regular iff a^2-a+1 != 0",
        },
        CatalogEntry {
            name: "typeA",
            params: &["a", "b", "c"],
            summary: "elliptic type A family; needs abc != 0 and (3abc)^3 != (a^3+b^3+c^3)^3",
        },
        CatalogEntry {
            name: "skew3",
            params: &["c"],
            summary: "skew ring with relations yz + c zy, zx + c xz, xy + c yx",
        },
        CatalogEntry {
            name: "lemma16",
            params: &["d", "e", "f"],
            summary: "triangle algebra with relations yx = d z^2, zy = e x^2, xz = f y^2",
        },
        CatalogEntry {
            name: "prop12",
            params: &["case", "q", "alpha", "beta", "gamma"],
            summary: "Ore extension of the commutative plane with a central generator (two cases)",
        },
        CatalogEntry {
            name: "prop2_star",
            params: &["a", "c", "e"],
            summary: "characteristic-3 algebra on concurrent lines with xy = x^2 + y^2",
        },
        CatalogEntry {
            name: "prop17_dual",
            params: &["a", "b", "c", "e"],
            summary: "seven dual relations of the concurrent-lines case with d = f = -b imposed",
        },
        CatalogEntry {
            name: "example_gsca",
            params: &["case", "mu12", "mu13", "mu23", "alpha1", "alpha2", "alpha3"],
            summary: "skew Clifford family x_i x_j + mu_ij x_j x_i = alpha_k x_k^2 (cases 1-6)",
        },
        CatalogEntry {
            name: "nodal_dual",
            params: &["lambda"],
            summary: "the six-element dual relation space of the nodal family",
        },
        CatalogEntry {
            name: "cusp_char3_candidate",
            params: &["lambda1", "lambda2"],
            summary: "characteristic-3 candidate family whose Hilbert function grows too fast",
        },
    ]
}

pub struct Params<'a> {
    map: &'a BTreeMap<String, Scalar>,
    field: &'a Field,
}

impl<'a> Params<'a> {
    fn get(&self, name: &str) -> Result<Scalar, CatalogError> {
        self.map
            .get(name)
            .cloned()
            .ok_or_else(|| CatalogError::MissingParam(name.to_string()))
    }

    fn get_usize(&self, name: &str) -> Result<usize, CatalogError> {
        let s = self.get(name)?;
        for k in 1..=6usize {
            if s == self.field.scalar_from_i64(k as i64) {
                return Ok(k);
            }
        }
        Err(CatalogError::ConstraintViolation(format!(
            "parameter `{}` must be a small positive integer",
            name
        )))
    }
}

fn check(
    ok: bool,
    bypass: bool,
    description: &str,
) -> Result<(), CatalogError> {
    if ok || bypass {
        Ok(())
    } else {
        Err(CatalogError::ConstraintViolation(description.to_string()))
    }
}

fn ctx(field: &Field, names: &[&str]) -> Result<GenCtx, CatalogError> {
    Ok(GenCtx::new(field, names).map_err(QuadError::Nc)?)
}

fn rel(ctx: &GenCtx, src: &str) -> Result<NcPoly, CatalogError> {
    Ok(parse_ncpoly(src, ctx)?)
}

fn algebra(ctx: &GenCtx, rels: &[NcPoly]) -> Result<QuadraticAlgebra, CatalogError> {
    Ok(QuadraticAlgebra::new(ctx, rels)?)
}

fn comm(field: &Field, src: &str) -> CommPoly {
    crate::parse::parse_commpoly(src, field).expect("fixed polynomial text")
}

/// Build a catalog algebra. Constraint checks can be bypassed to construct
/// the boundary cases the failure tests need.
pub fn build(
    name: &str,
    params: &BTreeMap<String, Scalar>,
    field: &Field,
    bypass_constraints: bool,
) -> Result<Built, CatalogError> {
    for key in params.keys() {
        let known = entries()
            .iter()
            .find(|e| e.name == name)
            .map(|e| e.params.contains(&key.as_str()))
            .unwrap_or(false);
        if !known {
            return Err(CatalogError::UnexpectedParam(key.clone()));
        }
    }
    let p = Params { map: params, field };
    let by = bypass_constraints;
    match name {
        "nodal" => build_nodal(field, &p, by),
        "cuspidal" => build_cuspidal(field),
        "typeH" => build_type_h(field),
        "typeB" => build_type_b(field, &p, by),
        "typeA" => build_type_a(field, &p, by),
        "skew3" => build_skew3(field, &p, by),
        "lemma16" => build_lemma16(field, &p, by),
        "prop12" => build_prop12(field, &p, by),
        "prop2_star" => build_prop2_star(field, &p, by),
        "prop17_dual" => build_prop17_dual(field, &p, by),
        "example_gsca" => build_example_gsca(field, &p, by),
        "nodal_dual" => build_nodal_dual(field, &p, by),
        "cusp_char3_candidate" => build_cusp_char3(field, &p, by),
        _ => Err(CatalogError::UnknownEntry(name.to_string())),
    }
}

fn scalar_term(c: &Scalar) -> String {
    format!("({})", c)
}

fn build_nodal(field: &Field, p: &Params, by: bool) -> Result<Built, CatalogError> {
    let l = p.get("lambda")?;
    let l3m1 = l.mul(&l).mul(&l).sub(&field.one());
    check(
        !l.mul(&l3m1).is_zero(),
        by,
        "nodal family needs lambda*(lambda^3 - 1) != 0",
    )?;
    let c = ctx(field, &["x1", "x2", "x3"])?;
    let ls = scalar_term(&l);
    let relations = vec![
        rel(&c, &format!("{ls}*x1*x2 - x2*x1"))?,
        rel(&c, &format!("{ls}*x2*x3 - x3*x2 + x1^2"))?,
        rel(&c, &format!("{ls}*x3*x1 - x1*x3 + x2^2"))?,
    ];
    let cubic = {
        let x3 = comm(field, "x^3");
        let y3 = comm(field, "y^3");
        let xyz = comm(field, "x*y*z");
        x3.scale(&l).add(&y3.scale(&l)).add(&xyz.scale(&l3m1))
    };
    Ok(Built {
        algebra: algebra(&c, &relations)?,
        expected: Expected {
            cubic: Some(cubic),
            cubic_class: Some("Nodal"),
            hilbert_prefix: Some(vec![1, 3, 6, 10, 15]),
        },
    })
}

fn build_cuspidal(field: &Field) -> Result<Built, CatalogError> {
    let c = ctx(field, &["x1", "x2", "x3"])?;
    let relations = vec![
        rel(&c, "x1*x2 - x2*x1 - x1^2")?,
        rel(&c, "x3*x1 - x1*x3 - x1^2 - 3*x2^2")?,
        rel(&c, "x3*x2 - x2*x3 + 3*x2^2 + 2*x1*x3 + 2*x1*x2")?,
    ];
    let char3 = field.characteristic() == 3;
    let cubic = if char3 {
        CommPoly::zero(field)
    } else {
        comm(field, "3*y^3 + 3*x^2*z")
    };
    Ok(Built {
        algebra: algebra(&c, &relations)?,
        expected: Expected {
            cubic: Some(cubic),
            cubic_class: Some(if char3 { "IdenticallyZero" } else { "Cuspidal" }),
            hilbert_prefix: Some(vec![1, 3, 6, 10, 15]),
        },
    })
}

/// A primitive fourth root of unity in the field, when one exists.
pub fn fourth_root_of_unity(field: &Field) -> Option<Scalar> {
    field.scalar_from_i64(-1).sqrt_in_field()
}

fn build_type_h(field: &Field) -> Result<Built, CatalogError> {
    let i = fourth_root_of_unity(field).ok_or_else(|| {
        CatalogError::FieldUnsupported("a primitive fourth root of unity".into())
    })?;
    let c = ctx(field, &["x", "y", "z"])?;
    let is = scalar_term(&i);
    let relations = vec![
        rel(&c, "y^2 - x^2")?,
        rel(&c, &format!("z*y + {is}*y*z"))?,
        rel(&c, &format!("y*x - x*y - {is}*z^2"))?,
    ];
    Ok(Built {
        algebra: algebra(&c, &relations)?,
        expected: Expected {
            cubic: None,
            cubic_class: Some(if field.characteristic() == 2 {
                "NeedsExtension"
            } else {
                "Elliptic"
            }),
            hilbert_prefix: Some(vec![1, 3, 6, 10, 15]),
        },
    })
}

fn build_type_b(field: &Field, p: &Params, by: bool) -> Result<Built, CatalogError> {
    let a = p.get("a")?;
    check(
        !a.mul(&a.sub(&field.one())).is_zero(),
        by,
        "type B needs a*(a - 1) != 0",
    )?;
    let c = ctx(field, &["x", "y", "z"])?;
    let as_ = scalar_term(&a);
    let relations = vec![
        rel(&c, "x*y + y*x - z^2 + y^2")?,
        rel(&c, &format!("x*y + y*x - {as_}*z^2 + x^2"))?,
        rel(&c, &format!("z*x - x*z - {as_}*y*z + {as_}*z*y"))?,
    ];
    Ok(Built {
        algebra: algebra(&c, &relations)?,
        expected: Expected::default(),
    })
}

fn build_type_a(field: &Field, p: &Params, by: bool) -> Result<Built, CatalogError> {
    let a = p.get("a")?;
    let b = p.get("b")?;
    let cc = p.get("c")?;
    let abc = a.mul(&b).mul(&cc);
    check(!abc.is_zero(), by, "type A needs abc != 0")?;
    let cube = |s: &Scalar| s.mul(s).mul(s);
    let three_abc_cubed = cube(&abc.mul(&field.scalar_from_i64(3)));
    let sum_cubes = cube(&a).add(&cube(&b)).add(&cube(&cc));
    check(
        three_abc_cubed != cube(&sum_cubes),
        by,
        "type A needs (3abc)^3 != (a^3 + b^3 + c^3)^3",
    )?;
    let c = ctx(field, &["x", "y", "z"])?;
    let (as_, bs, cs) = (scalar_term(&a), scalar_term(&b), scalar_term(&cc));
    let relations = vec![
        rel(&c, &format!("{as_}*x*y + {bs}*y*x + {cs}*z^2"))?,
        rel(&c, &format!("{as_}*y*z + {bs}*z*y + {cs}*x^2"))?,
        rel(&c, &format!("{as_}*z*x + {bs}*x*z + {cs}*y^2"))?,
    ];
    Ok(Built {
        algebra: algebra(&c, &relations)?,
        expected: Expected::default(),
    })
}

fn build_skew3(field: &Field, p: &Params, by: bool) -> Result<Built, CatalogError> {
    let cval = p.get("c")?;
    check(!cval.is_zero(), by, "skew ring needs c != 0")?;
    let c = ctx(field, &["x", "y", "z"])?;
    let cs = scalar_term(&cval);
    let relations = vec![
        rel(&c, &format!("y*z + {cs}*z*y"))?,
        rel(&c, &format!("z*x + {cs}*x*z"))?,
        rel(&c, &format!("x*y + {cs}*y*x"))?,
    ];
    let coeff = field.one().add(&cval.mul(&cval).mul(&cval));
    let cubic = comm(field, "x*y*z").scale(&coeff);
    Ok(Built {
        algebra: algebra(&c, &relations)?,
        expected: Expected {
            cubic_class: Some(if coeff.is_zero() {
                "IdenticallyZero"
            } else {
                "Triangle"
            }),
            cubic: Some(cubic),
            hilbert_prefix: Some(vec![1, 3, 6, 10, 15]),
        },
    })
}

fn build_lemma16(field: &Field, p: &Params, by: bool) -> Result<Built, CatalogError> {
    let d = p.get("d")?;
    let e = p.get("e")?;
    let f = p.get("f")?;
    check(
        !d.mul(&e).mul(&f).is_zero(),
        by,
        "triangle algebra needs def != 0",
    )?;
    let c = ctx(field, &["x", "y", "z"])?;
    let (ds, es, fs) = (scalar_term(&d), scalar_term(&e), scalar_term(&f));
    let relations = vec![
        rel(&c, &format!("y*x - {ds}*z^2"))?,
        rel(&c, &format!("z*y - {es}*x^2"))?,
        rel(&c, &format!("x*z - {fs}*y^2"))?,
    ];
    let coeff = field.one().sub(&d.mul(&e).mul(&f));
    let cubic = comm(field, "x*y*z").scale(&coeff);
    Ok(Built {
        algebra: algebra(&c, &relations)?,
        expected: Expected {
            cubic_class: Some(if coeff.is_zero() {
                "IdenticallyZero"
            } else {
                "Triangle"
            }),
            cubic: Some(cubic),
            hilbert_prefix: Some(vec![1, 3, 6, 10, 15]),
        },
    })
}

/// The Ore data behind the `prop12` entry.
pub fn prop12_ore_data(
    field: &Field,
    case: usize,
    qv: &Scalar,
    alpha: &Scalar,
    beta: &Scalar,
    gamma: &Scalar,
) -> Result<OreData, CatalogError> {
    let c = ctx(field, &["xp", "y"])?;
    let base = algebra(&c, &[rel(&c, "xp*y - y*xp")?])?;
    // phi(xp) = xp, phi(y) = s y - gamma xp; delta(xp) = 0,
    // delta(y) = -t y^2 - alpha xp^2 - beta xp y
    let (s, t) = match case {
        1 => (field.one(), field.one()),
        2 => (qv.clone(), field.zero()),
        _ => {
            return Err(CatalogError::ConstraintViolation(
                "case must be 1 or 2".into(),
            ))
        }
    };
    let mut phi = Matrix::identity(field, 2);
    *phi.at_mut(0, 1) = gamma.neg();
    *phi.at_mut(1, 1) = s;
    let delta_y = {
        let y2 = rel(&c, "y^2")?;
        let xp2 = rel(&c, "xp^2")?;
        let xpy = rel(&c, "xp*y")?;
        y2.scale(&t.neg())
            .add(&xp2.scale(&alpha.neg()))
            .add(&xpy.scale(&beta.neg()))
    };
    Ok(OreData::new(base, phi, vec![NcPoly::zero(&c), delta_y])?)
}

fn build_prop12(field: &Field, p: &Params, by: bool) -> Result<Built, CatalogError> {
    let case = p.get_usize("case")?;
    let qv = p.get("q").unwrap_or_else(|_| field.one());
    let alpha = p.get("alpha")?;
    let beta = p.get("beta")?;
    let gamma = p.get("gamma")?;
    if case == 2 {
        check(!qv.is_zero(), by, "case 2 needs q != 0")?;
    }
    let data = prop12_ore_data(field, case, &qv, &alpha, &beta, &gamma)?;
    let algebra = crate::quadalg::ore_extension(&data, "z")?;
    Ok(Built {
        algebra,
        expected: Expected {
            cubic: None,
            cubic_class: None,
            hilbert_prefix: Some(vec![1, 3, 6, 10, 15]),
        },
    })
}

fn build_prop2_star(field: &Field, p: &Params, by: bool) -> Result<Built, CatalogError> {
    if field.characteristic() != 3 {
        return Err(CatalogError::FieldUnsupported("characteristic 3".into()));
    }
    let a = p.get("a")?;
    let cc = p.get("c")?;
    let e = p.get("e")?;
    // the automorphism does not extend to the plane: c != e + a
    check(cc != e.add(&a), by, "needs c != e + a")?;
    let c = ctx(field, &["x", "y", "z"])?;
    let (as_, cs, es) = (scalar_term(&a), scalar_term(&cc), scalar_term(&e));
    let relations = vec![
        rel(&c, "x*y - x^2 - y^2")?,
        rel(&c, &format!("z*y + x*z - {cs}*x^2 - {es}*y^2"))?,
        rel(&c, &format!("z*x - y*z + x*z + {as_}*y*x - {cs}*x^2"))?,
    ];
    Ok(Built {
        algebra: algebra(&c, &relations)?,
        expected: Expected {
            cubic: None,
            cubic_class: None,
            hilbert_prefix: Some(vec![1, 3, 6, 10, 15]),
        },
    })
}

fn build_prop17_dual(field: &Field, p: &Params, by: bool) -> Result<Built, CatalogError> {
    let a = p.get("a")?;
    let b = p.get("b")?;
    let cc = p.get("c")?;
    let e = p.get("e")?;
    check(!b.is_zero(), by, "needs b != 0")?;
    let c = ctx(field, &["X", "Y", "Z"])?;
    let (as_, bs, cs, es) = (
        scalar_term(&a),
        scalar_term(&b),
        scalar_term(&cc),
        scalar_term(&e),
    );
    // the seven relations with d = f = -b imposed
    let relations = vec![
        rel(&c, &format!("Y*X + {as_}*Y*Z"))?,
        rel(&c, &format!("Y^2 + X*Y + {es}*X*Z + {es}*Y*Z"))?,
        rel(&c, &format!("X^2 + X*Y + {cs}*X*Z"))?,
        rel(&c, "Z^2")?,
        rel(&c, &format!("Z*Y + Z*X - {bs}*X*Z"))?,
        rel(&c, &format!("Z*X + {bs}*Y*Z"))?,
        rel(&c, &format!("Z*Y - {bs}*Y*Z - {bs}*X*Z"))?,
    ];
    Ok(Built {
        algebra: algebra(&c, &relations)?,
        expected: Expected::default(),
    })
}

fn build_example_gsca(field: &Field, p: &Params, by: bool) -> Result<Built, CatalogError> {
    if field.characteristic() == 2 {
        return Err(CatalogError::FieldUnsupported(
            "characteristic different from 2".into(),
        ));
    }
    let case = p.get_usize("case")?;
    let m12 = p.get("mu12")?;
    let m13 = p.get("mu13")?;
    let m23 = p.get("mu23")?;
    for (name, v) in [("mu12", &m12), ("mu13", &m13), ("mu23", &m23)] {
        if v.is_zero() {
            return Err(CatalogError::ConstraintViolation(format!(
                "{} must be nonzero",
                name
            )));
        }
    }
    let a1 = p.get("alpha1")?;
    let a2 = p.get("alpha2")?;
    let a3 = p.get("alpha3")?;
    let one = field.one();
    let two = field.scalar_from_i64(2);
    let zero_alphas = |list: &[&Scalar]| list.iter().all(|x| x.is_zero());
    let key = m13.add(&m12.mul(&m23));
    // per-case constraints from the worked family
    match case {
        1 => check(
            zero_alphas(&[&a1, &a2, &a3]) && key.is_zero(),
            by,
            "case 1 needs alpha = 0 and mu13 + mu12 mu23 = 0",
        )?,
        2 => check(
            zero_alphas(&[&a1, &a2, &a3]) && !key.is_zero(),
            by,
            "case 2 needs alpha = 0 and mu13 + mu12 mu23 != 0",
        )?,
        3 => check(
            a1.is_zero()
                && a2.is_zero()
                && !a3.is_zero()
                && m13.mul(&m23).is_one()
                && key.is_zero(),
            by,
            "case 3 needs alpha1 = alpha2 = 0 != alpha3, mu13 mu23 = 1, mu13 + mu12 mu23 = 0",
        )?,
        4 => check(
            a1.is_zero()
                && a2.is_zero()
                && !a3.is_zero()
                && m13.mul(&m23).is_one()
                && !key.is_zero(),
            by,
            "case 4 needs alpha1 = alpha2 = 0 != alpha3, mu13 mu23 = 1, mu13 + mu12 mu23 != 0",
        )?,
        5 => check(
            a1.is_zero()
                && !a2.mul(&a3).is_zero()
                && m12 == m23
                && m12.mul(&m12).mul(&m12).is_one()
                && m13 == m12.mul(&m12),
            by,
            "case 5 needs alpha1 = 0 != alpha2 alpha3, mu12 = mu23, mu12^3 = 1, mu13 = mu12^2",
        )?,
        6 => check(
            !a1.mul(&a2).mul(&a3).is_zero()
                && m12 == m23
                && m12.mul(&m12).mul(&m12).is_one()
                && m13 == m12.mul(&m12)
                && !a1.mul(&a2).mul(&a3).add(&m12.mul(&m12)).is_zero(),
            by,
            "case 6 needs alpha1 alpha2 alpha3 != 0, mu12 = mu23, mu12^3 = 1, mu13 = mu12^2, and alpha1 alpha2 alpha3 + mu12^2 != 0",
        )?,
        _ => {
            return Err(CatalogError::ConstraintViolation(
                "case must be 1..=6".into(),
            ))
        }
    }
    let c = ctx(field, &["x1", "x2", "x3"])?;
    let mk = |i: usize, j: usize, mu_ij: &Scalar, alpha_k: &Scalar, k: usize| {
        let src = format!(
            "x{i}*x{j} + ({mu})*x{j}*x{i} - ({al})*x{k}^2",
            i = i,
            j = j,
            k = k,
            mu = mu_ij,
            al = alpha_k
        );
        rel(&c, &src)
    };
    let relations = vec![
        mk(1, 2, &m12, &a3, 3)?,
        mk(2, 3, &m23, &a1, 1)?,
        mk(1, 3, &m13, &a2, 2)?,
    ];
    let (cubic, class): (Option<CommPoly>, Option<&'static str>) = match case {
        1 => (Some(CommPoly::zero(field)), Some("IdenticallyZero")),
        2 => (Some(comm(field, "x*y*z")), Some("Triangle")),
        3 => (Some(comm(field, "z^3")), Some("TripleLine")),
        4 => {
            let conic = comm(field, "x*y").scale(&key).add(&comm(field, "z^2").scale(&a3));
            (Some(conic.mul(&comm(field, "z"))), Some("ConicPlusSecantLine"))
        }
        5 => {
            let cubic = comm(field, "y^3")
                .scale(&a2)
                .add(&comm(field, "z^3").scale(&a3.mul(&m13)))
                .add(&comm(field, "x*y*z").scale(&two.mul(&m12)));
            (Some(cubic), Some("Nodal"))
        }
        6 => {
            let coeff = two.mul(&m12).mul(&m12).sub(&a1.mul(&a2).mul(&a3));
            let cubic = comm(field, "x^3")
                .scale(&a1)
                .add(&comm(field, "y^3").scale(&a2.mul(&m12)))
                .add(&comm(field, "z^3").scale(&a3))
                .add(&comm(field, "x*y*z").scale(&coeff));
            let eight = field.scalar_from_i64(8);
            let elliptic = a1.mul(&a2).mul(&a3) != eight.mul(&m12).mul(&m12);
            (Some(cubic), if elliptic { Some("Elliptic") } else { None })
        }
        _ => (None, None),
    };
    let _ = one;
    Ok(Built {
        algebra: algebra(&c, &relations)?,
        expected: Expected {
            cubic,
            cubic_class: class,
            hilbert_prefix: Some(vec![1, 3, 6, 10, 15]),
        },
    })
}

fn build_nodal_dual(field: &Field, p: &Params, by: bool) -> Result<Built, CatalogError> {
    let l = p.get("lambda")?;
    let l3m1 = l.mul(&l).mul(&l).sub(&field.one());
    check(
        !l.mul(&l3m1).is_zero(),
        by,
        "nodal dual needs lambda*(lambda^3 - 1) != 0",
    )?;
    let c = ctx(field, &["z1", "z2", "z3"])?;
    let (ls, ks) = (scalar_term(&l), scalar_term(&l3m1));
    let relations = vec![
        rel(&c, "z3^2")?,
        rel(&c, &format!("z1*z2 + {ls}*z2*z1"))?,
        rel(&c, &format!("{ls}*z2^2 + {ks}*z1*z3"))?,
        rel(&c, &format!("z2*z3 + {ls}*z3*z2"))?,
        rel(&c, &format!("{ls}*z1^2 + {ks}*z3*z2"))?,
        rel(&c, &format!("z3*z1 + {ls}*z1*z3"))?,
    ];
    Ok(Built {
        algebra: algebra(&c, &relations)?,
        expected: Expected {
            cubic: None,
            cubic_class: None,
            hilbert_prefix: Some(vec![1, 3, 3, 1, 0]),
        },
    })
}

fn build_cusp_char3(field: &Field, p: &Params, by: bool) -> Result<Built, CatalogError> {
    if field.characteristic() != 3 {
        return Err(CatalogError::FieldUnsupported("characteristic 3".into()));
    }
    let l1 = p.get("lambda1")?;
    let l2 = p.get("lambda2")?;
    check(
        !l1.mul(&l1.sub(&field.one())).is_zero(),
        by,
        "candidate family needs lambda1*(lambda1 - 1) != 0",
    )?;
    let c = ctx(field, &["x1", "x2", "x3"])?;
    let one = field.one();
    let l1_2 = l1.mul(&l1);
    let l1_3 = l1_2.mul(&l1);
    let r1 = {
        let s = format!("x1*x2 - ({})*x2*x1 - ({})*x1^2", l1, l2);
        rel(&c, &s)?
    };
    let r2 = {
        let c22 = l1.mul(&one.sub(&l1));
        let c21 = l1.mul(&l2).mul(&one.add(&l1));
        let c11 = l2.mul(&l2).mul(&one.add(&l2));
        let s = format!(
            "x1*x3 - ({})*x3*x1 + ({})*x2^2 + ({})*x2*x1 + ({})*x1^2",
            l1_3, c22, c21, c11
        );
        rel(&c, &s)?
    };
    let r3 = {
        let c31 = l1_2.mul(&l1.add(&l2).sub(&one));
        let c22 = l1_2.sub(&l1).add(&l2.add(&l2));
        let c21 = l2.mul(
            &l2.mul(&l2)
                .sub(&l2)
                .sub(&l1_2)
                .add(&l1),
        );
        let s = format!(
            "x2*x3 - ({})*x3*x2 + ({})*x3*x1 + ({})*x2^2 + ({})*x2*x1",
            l1_2, c31, c22, c21
        );
        rel(&c, &s)?
    };
    Ok(Built {
        algebra: algebra(&c, &[r1, r2, r3])?,
        expected: Expected {
            cubic: None,
            cubic_class: None,
            hilbert_prefix: Some(vec![1, 3, 6, 9]),
        },
    })
}

/// Ore data for the nodal family: base `k<x1,x2>/(l x1 x2 - x2 x1)` with
/// `phi = diag(1/l, l)`, `delta(x1) = -x2^2/l`, `delta(x2) = x1^2`.
pub fn nodal_ore_data(field: &Field, lambda: &Scalar) -> Result<OreData, CatalogError> {
    if lambda.is_zero() {
        return Err(CatalogError::ConstraintViolation("lambda must be nonzero".into()));
    }
    let c = ctx(field, &["x1", "x2"])?;
    let ls = scalar_term(lambda);
    let base = algebra(&c, &[rel(&c, &format!("{ls}*x1*x2 - x2*x1"))?])?;
    let linv = lambda.inv();
    let phi = Matrix::diagonal(field, &[linv.clone(), lambda.clone()]);
    let delta = vec![
        rel(&c, "x2^2")?.scale(&linv.neg()),
        rel(&c, "x1^2")?,
    ];
    Ok(OreData::new(base, phi, delta)?)
}

/// Ore data for the cuspidal algebra: base `k<x1,x2>/(x1 x2 - x2 x1 - x1^2)`
/// with `phi(x1) = x1`, `phi(x2) = x2 - 2 x1`.
pub fn cuspidal_ore_data(field: &Field) -> Result<OreData, CatalogError> {
    let c = ctx(field, &["x1", "x2"])?;
    let base = algebra(&c, &[rel(&c, "x1*x2 - x2*x1 - x1^2")?])?;
    let mut phi = Matrix::identity(field, 2);
    *phi.at_mut(0, 1) = field.scalar_from_i64(-2);
    let delta = vec![
        rel(&c, "x1^2 + 3*x2^2")?,
        rel(&c, "-2*x1*x2 - 3*x2^2")?,
    ];
    Ok(OreData::new(base, phi, delta)?)
}
