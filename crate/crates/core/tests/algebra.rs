use hecke_dga::dga::DgaEltDoc;
use hecke_dga::{
    parse_expr, Dga, DgaConfig, DgaElt, GenWord, HeckeElt, IntPoly, Letter, Perm, Side,
};
use proptest::prelude::*;

fn letter(k: usize) -> impl Strategy<Value = Letter> {
    prop_oneof![
        (1..k).prop_map(Letter::T),
        (1..k).prop_map(Letter::Tinv),
        (1..=k).prop_map(Letter::X),
    ]
}

fn word(k: usize, max: usize) -> impl Strategy<Value = GenWord> {
    (
        prop::collection::vec(letter(k), 0..=max),
        -2i64..3,
        -2i64..3,
    )
        .prop_map(|(ls, a, b)| {
            let c = IntPoly::from_i64s(&[a, b]);
            GenWord::new(if c.is_zero() { IntPoly::one() } else { c }, ls)
        })
}

fn hecke(k: usize) -> impl Strategy<Value = HeckeElt> {
    prop::collection::vec((0..Perm::all(k).len(), -3i64..4, -3i64..4), 0..4).prop_map(move |ts| {
        let perms = Perm::all(k);
        let mut h = HeckeElt::zero(k);
        for (i, a, b) in ts {
            h.add_term(perms[i].clone(), IntPoly::from_i64s(&[a, b]));
        }
        h
    })
}

fn dga(k: usize) -> Dga {
    Dga::new(DgaConfig::new(k).unwrap())
}

proptest! {
    #![proptest_config(ProptestConfig::with_cases(48))]

    #[test]
    fn hecke_associative(a in hecke(3), b in hecke(3), c in hecke(3)) {
        let l = a.mul(&b).unwrap().mul(&c).unwrap();
        let r = a.mul(&b.mul(&c).unwrap()).unwrap();
        prop_assert_eq!(l, r);
    }

    #[test]
    fn hecke_distributive(a in hecke(3), b in hecke(3), c in hecke(3)) {
        let l = a.mul(&(&b + &c)).unwrap();
        let r = &a.mul(&b).unwrap() + &a.mul(&c).unwrap();
        prop_assert_eq!(l, r);
    }

    #[test]
    fn leibniz(a in word(3, 4), b in word(3, 4)) {
        let d = dga(3);
        let (a, b) = (d.normal_form(&a).unwrap(), d.normal_form(&b).unwrap());
        let s = a.terms().next().map_or(0, |(m, _)| m.x_degree());
        let a = a.homogeneous_part(s);
        let sign = if s % 2 == 0 { IntPoly::one() } else { -IntPoly::one() };
        let lhs = d.differential(&d.mul(&a, &b).unwrap());
        let mut rhs = d.mul(&d.differential(&a), &b).unwrap();
        rhs.add_scaled(&d.mul(&a, &d.differential(&b)).unwrap(), &sign);
        prop_assert_eq!(lhs, rhs);
    }

    #[test]
    fn d_squared_on_words(w in word(3, 5)) {
        let d = dga(3);
        let e = d.normal_form(&w).unwrap();
        prop_assert!(d.differential(&d.differential(&e)).is_zero());
    }

    #[test]
    fn normal_form_is_multiplicative(a in word(3, 4), b in word(3, 4)) {
        let d = dga(3);
        let mut letters = a.letters.clone();
        letters.extend(b.letters.iter().cloned());
        let ab = GenWord::new(&a.prefactor * &b.prefactor, letters);
        let prod = d.mul(&d.normal_form(&a).unwrap(), &d.normal_form(&b).unwrap()).unwrap();
        prop_assert_eq!(d.normal_form(&ab).unwrap(), prod);
    }

    #[test]
    fn display_reparses(w in word(3, 5)) {
        let d = dga(3);
        let e = d.normal_form(&w).unwrap();
        let back = parse_expr(&e.to_string(), 3).unwrap().eval(&d).unwrap();
        prop_assert_eq!(back, e);
    }

    #[test]
    fn json_round_trip(w in word(3, 5)) {
        let d = dga(3);
        let e = d.normal_form(&w).unwrap();
        let doc = DgaEltDoc::new(&e, d.config());
        let text = serde_json::to_string(&doc).unwrap();
        let back: DgaEltDoc = serde_json::from_str(&text).unwrap();
        let (e2, cfg) = back.into_elt().unwrap();
        prop_assert_eq!(e2, e);
        prop_assert_eq!(&cfg, d.config());
    }
}

#[test]
fn inverse_generators() {
    for k in 2..=4 {
        for i in 1..k {
            let t = HeckeElt::t(i, k).unwrap();
            let ti = HeckeElt::t_inverse(i, k).unwrap();
            assert_eq!(t.mul(&ti).unwrap(), HeckeElt::one(k));
            assert_eq!(ti.mul(&t).unwrap(), HeckeElt::one(k));
        }
    }
}

#[test]
fn braid_relations_in_hecke() {
    let k = 4;
    let t = |i| HeckeElt::t(i, k).unwrap();
    for i in 1..k - 1 {
        let l = t(i).mul(&t(i + 1)).unwrap().mul(&t(i)).unwrap();
        let r = t(i + 1).mul(&t(i)).unwrap().mul(&t(i + 1)).unwrap();
        assert_eq!(l, r);
    }
    assert_eq!(t(1).mul(&t(3)).unwrap(), t(3).mul(&t(1)).unwrap());
}

#[test]
fn one_sided_products_agree() {
    for w in Perm::all(3) {
        let b = HeckeElt::basis(w.clone());
        for i in 1..3 {
            let t = HeckeElt::t(i, 3).unwrap();
            assert_eq!(b.mul_gen(i, Side::Left).unwrap(), t.mul(&b).unwrap());
            assert_eq!(b.mul_gen(i, Side::Right).unwrap(), b.mul(&t).unwrap());
        }
    }
}

#[test]
fn x_generators_differential() {
    for k in 1..=4 {
        let d = dga(k);
        for j in 1..=k {
            let x = DgaElt::x(j, k).unwrap();
            let dx = d.differential(&x);
            assert_eq!(dx, d.d_generator(j).unwrap(), "k={k} j={j}");
            assert_eq!(dx.degree().unwrap().unwrap_or(0), 0);
        }
    }
}

#[test]
fn kappa_mismatch_is_an_error() {
    let d = dga(3);
    let a = DgaElt::x(1, 2).unwrap();
    assert!(d.mul(&a, &DgaElt::one(3)).is_err());
}
