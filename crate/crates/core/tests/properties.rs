use proptest::prelude::*;
use rand::SeedableRng;
use rand_chacha::ChaCha8Rng;

use innerhom::algebra::{AlgHom, Algebra};
use innerhom::homgroupoid::{check_two_cell, pi0_equal, vcompose, TwoCell};
use innerhom::interval::{
    compose, interval_vcompose, pi0_emb, transport, IntervalTwoCell, Interval, MappingClass,
};
use innerhom::quantization::{induced_site_hom, CarAlgebra, ModularData};
use innerhom::random;
use innerhom::scalar::Field;
use innerhom::symbolic::{normalize, parse, Expr};

const F5: Field = Field::Prime(5);

fn rng(seed: u64) -> ChaCha8Rng {
    ChaCha8Rng::seed_from_u64(seed)
}

fn cell(seed: u64) -> TwoCell {
    let mut r = rng(seed);
    let alg = Algebra::full("M2", F5, 2);
    let (_, phi0) = random::inner_hom(&alg, &mut r);
    let (phi1, a, b) = random::cell_from(&phi0, &mut r).unwrap();
    check_two_cell(&phi0, &phi1, &a, &b).unwrap().valid().unwrap()
}

fn expr() -> impl Strategy<Value = Expr> {
    let leaf = prop_oneof![
        Just(Expr::One),
        prop::sample::select(vec!["a", "b", "c", "x"]).prop_map(Expr::atom),
        prop::sample::select(vec!["v", "w"]).prop_map(Expr::var),
    ];
    leaf.prop_recursive(4, 24, 4, |inner| {
        prop_oneof![
            inner.clone().prop_map(Expr::inverse),
            prop::collection::vec(inner.clone(), 2..4).prop_map(Expr::product),
            (prop::sample::select(vec!["f", "g"]), inner).prop_map(|(h, e)| Expr::hom(h, e)),
        ]
    })
}

proptest! {
    #![proptest_config(ProptestConfig::with_cases(48))]

    #[test]
    fn cells_have_two_sided_inverses(seed in any::<u64>()) {
        let f = cell(seed);
        let inv = f.inverse().unwrap();
        prop_assert!(vcompose(&f, &inv).unwrap().same_components(&TwoCell::identity(f.src())));
        prop_assert!(vcompose(&inv, &f).unwrap().same_components(&TwoCell::identity(f.dst())));
    }

    #[test]
    fn pi0_is_an_equivalence(seed in any::<u64>()) {
        let mut r = rng(seed);
        let alg = Algebra::full("M2", F5, 2);
        let homs: Vec<AlgHom> = (0..3).map(|_| random::inner_hom(&alg, &mut r).1).collect();
        let id = AlgHom::identity(&alg);
        prop_assert!(pi0_equal(&homs[0], &homs[0], seed).unwrap());
        // all inner automorphisms are equivalent to the identity, both ways round
        for h in &homs {
            prop_assert!(pi0_equal(h, &id, seed).unwrap() && pi0_equal(&id, h, seed).unwrap());
        }
        prop_assert!(pi0_equal(&homs[0], &homs[2], seed).unwrap());
    }

    #[test]
    fn transport_is_functorial(seed in any::<u64>()) {
        let mut r = rng(seed);
        let (i, j) = (Interval::ints(0, 1), Interval::ints(0, 2));
        let eps = random::pl_embedding(&i, &j, &mut r).unwrap();
        let c = random::interior_diffeo(&i, &mut r).unwrap();
        let d = random::interior_diffeo(&i, &mut r).unwrap();
        let lhs = transport(&c.after(&d).unwrap(), &eps).unwrap();
        let rhs = transport(&c, &eps).unwrap().after(&transport(&d, &eps).unwrap()).unwrap();
        prop_assert_eq!(lhs, rhs);
    }

    #[test]
    fn interval_cells_invert(seed in any::<u64>()) {
        let mut r = rng(seed);
        let (i, j) = (Interval::ints(0, 1), Interval::ints(0, 2));
        let f = random::interval_cell_from(&random::pl_embedding(&i, &j, &mut r).unwrap(), &mut r).unwrap();
        let back = interval_vcompose(&f, &f.inverse().unwrap()).unwrap();
        prop_assert_eq!(back, IntervalTwoCell::identity(f.src()));
    }

    #[test]
    fn interior_maps_have_trivial_class(seed in any::<u64>()) {
        let mut r = rng(seed);
        let i = Interval::ints(0, 1);
        let c = random::interior_diffeo(&i, &mut r).unwrap();
        prop_assert!(MappingClass::of_pl(c.map()).unwrap().is_identity());
        let h = random::pl_homeo(&i, &mut r).unwrap();
        let class = MappingClass::of_pl(&h).unwrap();
        let hc = compose(&h, c.map()).unwrap();
        prop_assert_eq!(MappingClass::of_pl(&hc).unwrap(), class);
    }

    #[test]
    fn pi0_emb_is_sound_and_symmetric(seed in any::<u64>()) {
        let mut r = rng(seed);
        let (i, j) = (Interval::ints(0, 1), Interval::ints(0, 3));
        let e0 = random::pl_embedding(&i, &j, &mut r).unwrap();
        let e1 = random::pl_embedding(&i, &j, &mut r).unwrap();
        let fwd = pi0_emb(&e0, &e1).unwrap();
        let bwd = pi0_emb(&e1, &e0).unwrap();
        prop_assert_eq!(fwd.equivalent, bwd.equivalent);
        prop_assert_eq!(fwd.witness.is_some(), fwd.equivalent);
        prop_assert!(pi0_emb(&e0, &e0).unwrap().equivalent);
    }

    #[test]
    fn site_embeddings_compose(seed in any::<u64>()) {
        let mut r = rng(seed);
        let (c1, c2, c3) = (CarAlgebra::on_sites(1).unwrap(), CarAlgebra::on_sites(2).unwrap(), CarAlgebra::on_sites(3).unwrap());
        let e = random::site_embedding(1, 2, &mut r).unwrap();
        let d = random::site_embedding(2, 3, &mut r).unwrap();
        let whole = induced_site_hom(&d.after(&e).unwrap(), &c1, &c3).unwrap();
        let parts = induced_site_hom(&e, &c1, &c2).unwrap().then(&induced_site_hom(&d, &c2, &c3).unwrap()).unwrap();
        prop_assert_eq!(whole, parts);
    }

    #[test]
    fn modular_continuation_is_multiplicative(seed in any::<u64>()) {
        let mut r = rng(seed);
        let data = ModularData::new(random::density_matrix(3, &mut r)).unwrap();
        let alg = Algebra::full("M3", Field::Gauss, 3);
        let (x, y) = (random::element(&alg, &mut r), random::element(&alg, &mut r));
        let xy = &x * &y;
        let prod = &data.modular_continuation(&x) * &data.modular_continuation(&y);
        prop_assert_eq!(data.modular_continuation(&xy), prod);
    }

    #[test]
    fn normalize_is_idempotent(e in expr()) {
        let w = normalize(&e);
        prop_assert_eq!(normalize(&w.to_expr()), w);
    }

    #[test]
    fn parse_inverts_print(e in expr()) {
        let w = normalize(&e);
        let back = parse(&w.to_string()).unwrap();
        prop_assert_eq!(normalize(&back), w);
    }
}
