//! Randomized invariants across the engines.

mod common;

use std::sync::Arc;

use proptest::prelude::*;

use domdimlab::exactmath::{FieldSpec, Matrix};
use domdimlab::homology::{
    check_ideal_rigidity, nakayama_indecomposables, projective_cover, syzygy, Representation,
    Resolution,
};
use domdimlab::nakayama::{cyclic_series, BoundedValue, NakAlgebra, NakModule};
use domdimlab::quivalg::json::{AlgebraFile, ModuleFile, TableFile};
use domdimlab::quivalg::{
    compile, is_symmetric, nakayama_to_table, preset_quiver, Decision, RelationExpr, SearchBudget,
};
use domdimlab::rigidity::{compat_graph, is_k_rigid_nakayama, o_k, NakayamaOracle};

use common::Cyclic;

fn field() -> impl Strategy<Value = FieldSpec> {
    prop_oneof![
        Just(FieldSpec::Prime(2)),
        Just(FieldSpec::Prime(3)),
        Just(FieldSpec::Prime(5)),
        Just(FieldSpec::Rational),
    ]
}

fn matrix() -> impl Strategy<Value = Matrix> {
    (field(), 1usize..6, 1usize..6).prop_flat_map(|(f, r, c)| {
        prop::collection::vec(-3i64..=3, r * c).prop_map(move |v| Matrix::from_i64(f, r, c, &v))
    })
}

/// Valid cyclic Kupisch series: `c_{i+1} >= c_i - 1` all around the cycle.
fn kupisch(max_n: usize, max_c: usize) -> impl Strategy<Value = Vec<usize>> {
    (1..=max_n)
        .prop_flat_map(move |n| prop::collection::vec(2..=max_c, n))
        .prop_filter("Kupisch condition", |c| {
            let n = c.len();
            (0..n).all(|i| c[(i + 1) % n] + 1 >= c[i])
        })
}

fn uni(m: NakModule) -> (usize, usize) {
    (m.vertex, m.length)
}

proptest! {
    #![proptest_config(ProptestConfig::with_cases(96))]

    #[test]
    fn rref_is_idempotent(m in matrix()) {
        let r = m.rref().matrix;
        prop_assert_eq!(r.rref().matrix, r);
    }

    #[test]
    fn rank_nullity(m in matrix()) {
        let kernel = m.kernel_basis();
        prop_assert_eq!(m.rank() + kernel.cols(), m.cols());
        prop_assert!(m.mul(&kernel).is_zero());
    }

    #[test]
    fn solve_is_sound(m in matrix(), seed in prop::collection::vec(-3i64..=3, 6)) {
        let b = Matrix::from_i64(m.field(), m.rows(), 1, &seed[..m.rows()]);
        if let Some(x) = m.solve(&b).unwrap() {
            prop_assert_eq!(m.mul(&x), b);
        }
        // A consistent system always has a solution.
        let x0 = Matrix::from_i64(m.field(), m.cols(), 1, &seed[..m.cols()]);
        let b0 = m.mul(&x0);
        let x = m.solve(&b0).unwrap();
        prop_assert!(x.is_some());
        prop_assert_eq!(m.mul(&x.unwrap()), b0);
    }

    #[test]
    fn inverse_is_two_sided(m in matrix()) {
        if m.rows() == m.cols() {
            match m.inverse() {
                Some(inv) => {
                    let id = Matrix::identity(m.field(), m.rows());
                    prop_assert_eq!(m.mul(&inv), id.clone());
                    prop_assert_eq!(inv.mul(&m), id);
                }
                None => prop_assert!(m.rank() < m.rows()),
            }
        }
    }

    #[test]
    fn string_grid_round_trip(m in matrix()) {
        let grid = m.to_string_grid();
        let back = Matrix::from_string_grid(m.field(), m.rows(), m.cols(), &grid).unwrap();
        prop_assert_eq!(back, m);
    }

    #[test]
    fn bounded_value_order(a in 0usize..20, b in 0usize..20) {
        let (x, y) = (BoundedValue::Finite(a), BoundedValue::Finite(b));
        prop_assert_eq!(x.min(y), BoundedValue::Finite(a.min(b)));
        prop_assert_eq!(x.max(y), BoundedValue::Finite(a.max(b)));
    }

    #[test]
    fn syzygy_lengths(c in kupisch(5, 10)) {
        let a = NakAlgebra::cycle(&c).unwrap();
        for m in a.indecomposables() {
            prop_assert_eq!(m.dim(), m.length);
            match a.syzygy(m) {
                Some(w) => {
                    prop_assert!(!a.is_projective(m));
                    prop_assert_eq!(w.dim(), a.c(m.vertex) - m.length);
                }
                None => prop_assert!(a.is_projective(m)),
            }
        }
    }

    #[test]
    fn ext_matches_reference(c in kupisch(4, 8)) {
        let a = NakAlgebra::cycle(&c).unwrap();
        let r = Cyclic::new(&c);
        for x in a.indecomposables() {
            for y in a.indecomposables() {
                prop_assert_eq!(a.dim_hom(x, y), r.hom(uni(x), uni(y)));
                for t in 1..=4 {
                    prop_assert_eq!(a.dim_ext(t, x, y), r.ext(t, uni(x), uni(y)));
                }
            }
        }
    }

    #[test]
    fn one_rigid_equals_ext_vanishing(c in kupisch(5, 10)) {
        prop_assume!(c.len() >= 2);
        let a = NakAlgebra::cycle(&c).unwrap();
        let brute: Vec<NakModule> = a
            .indecomposables()
            .into_iter()
            .filter(|&m| a.dim_ext(1, m, m) == 0)
            .collect();
        prop_assert_eq!(a.one_rigid_indecomposables().unwrap(), brute);
    }

    #[test]
    fn domdim_of_opposite(c in kupisch(5, 9)) {
        let a = NakAlgebra::cycle(&c).unwrap();
        prop_assert_eq!(a.domdim(48), a.opposite().domdim(48));
    }

    #[test]
    fn relation_display_reparses(
        terms in prop::collection::vec(
            (-4i64..=4, prop::collection::vec(prop_oneof![Just("a"), Just("b"), Just("c")], 1..4)),
            1..5,
        )
    ) {
        let mut text = String::new();
        for (idx, (k, p)) in terms.iter().enumerate() {
            let sign = match (idx, *k < 0) {
                (0, _) => "",
                (_, true) => " - ",
                (_, false) => " + ",
            };
            text.push_str(&format!("{sign}{}*{}", k.abs(), p.join("*")));
        }
        let e = RelationExpr::parse(&text).unwrap();
        // The zero relation prints as `0`, which is not a relation.
        prop_assume!(!e.is_zero());
        let again = RelationExpr::parse(&e.to_string()).unwrap();
        prop_assert_eq!(again, e);
    }
}

proptest! {
    #![proptest_config(ProptestConfig::with_cases(32))]

    #[test]
    fn o_k_invariants(c in kupisch(4, 7)) {
        prop_assume!(c.len() >= 2);
        let a = NakAlgebra::cycle(&c).unwrap();
        let oracle = NakayamaOracle::new(a.clone());
        let mut previous = usize::MAX;
        for k in 1..=3 {
            let r = o_k(&oracle, k).unwrap();
            prop_assert!(r.o_k >= a.n());
            prop_assert!(r.o_k <= previous);
            previous = r.o_k;
            let witness: Vec<NakModule> = r.witness.iter().map(|&[i, l]| NakModule::new(i, l)).collect();
            prop_assert_eq!(witness.len(), r.o_k);
            prop_assert!(is_k_rigid_nakayama(&a, &witness, k).unwrap());
        }
        let g = compat_graph(&oracle, 1).unwrap();
        let vertices: Vec<NakModule> = g.vertices.iter().map(|&i| oracle.module(i)).collect();
        prop_assert_eq!(vertices, a.one_rigid_indecomposables().unwrap());
    }

    #[test]
    fn resolution_bookkeeping(c in kupisch(3, 5), p in prop_oneof![Just(2u64), Just(3)]) {
        let a = NakAlgebra::cycle(&c).unwrap();
        let t = Arc::new(nakayama_to_table(&a, FieldSpec::Prime(p)).unwrap());
        for m in nakayama_indecomposables(&t).unwrap() {
            let res = Resolution::with_length(&m, 3).unwrap();
            prop_assert!(res.is_minimal());
            let mut x = m.clone();
            for _ in 0..3 {
                if x.is_zero() {
                    break;
                }
                let cover = projective_cover(&x).unwrap();
                let omega = syzygy(&x).unwrap();
                prop_assert_eq!(omega.dim(), cover.cover.dim() - x.dim());
                x = omega;
            }
        }
    }

    #[test]
    fn ext_duality(c in kupisch(3, 4)) {
        let a = NakAlgebra::cycle(&c).unwrap();
        let t = Arc::new(nakayama_to_table(&a, FieldSpec::Prime(2)).unwrap());
        let mods = nakayama_indecomposables(&t).unwrap();
        let duals: Vec<Representation> = mods.iter().map(Representation::dual).collect();
        for (m, dm) in mods.iter().zip(&duals) {
            let res = Resolution::with_length(m, 4).unwrap();
            for (n, dn) in mods.iter().zip(&duals) {
                let here = res.ext_dims(n, 3).unwrap().dims;
                let there = Resolution::with_length(dn, 4).unwrap().ext_dims(dm, 3).unwrap().dims;
                prop_assert_eq!(here, there);
            }
        }
    }

    #[test]
    fn table_file_round_trip(c in kupisch(3, 5), f in field()) {
        let a = NakAlgebra::cycle(&c).unwrap();
        let t = nakayama_to_table(&a, f).unwrap();
        let file = AlgebraFile::Table(TableFile::from_table(&t));
        let parsed = AlgebraFile::parse(&file.to_json()).unwrap();
        prop_assert_eq!(&parsed, &file);
        let back = parsed.to_table().unwrap();
        prop_assert_eq!(back.structure_triples(), t.structure_triples());
        prop_assert_eq!(back.unit(), t.unit());
    }

    #[test]
    fn module_file_round_trip(c in kupisch(3, 5)) {
        let a = NakAlgebra::cycle(&c).unwrap();
        let t = Arc::new(nakayama_to_table(&a, FieldSpec::Prime(3)).unwrap());
        for m in nakayama_indecomposables(&t).unwrap() {
            let file = ModuleFile::from_representation(&m);
            let back = ModuleFile::parse(&file.to_json()).unwrap().to_representation(&t).unwrap();
            prop_assert_eq!(back.actions(), m.actions());
        }
    }
}

#[test]
fn compile_is_deterministic_and_opposite_is_an_involution() {
    for name in [
        "hopf-a5-f2",
        "dihedral8-f2",
        "quaternion8-f2",
        "preproj-a2",
        "truncated-poly(4,F5)",
    ] {
        let spec = preset_quiver(name).unwrap();
        let a = compile(&spec).unwrap();
        let b = compile(&spec).unwrap();
        assert_eq!(a.basis_names(), b.basis_names(), "{name}");
        assert_eq!(a.structure_triples(), b.structure_triples(), "{name}");
        let back = a.opposite_table().opposite_table();
        assert_eq!(back.structure_triples(), a.structure_triples(), "{name}");
    }
}

#[test]
fn a5_dimension_is_field_independent() {
    let mut spec = preset_quiver("hopf-a5-f2").unwrap();
    assert_eq!(compile(&spec).unwrap().dim(), 8);
    // Monomial relations: the surviving paths are e, a, b, ab, ba.
    spec.relations = vec!["a*a".into(), "b*b".into(), "a*b*a".into(), "b*a*b".into()];
    let dims: Vec<usize> = [
        FieldSpec::Prime(2),
        FieldSpec::Prime(3),
        FieldSpec::Rational,
    ]
    .into_iter()
    .map(|f| {
        spec.field = f;
        compile(&spec).unwrap().dim()
    })
    .collect();
    assert_eq!(dims, [5, 5, 5]);
}

#[test]
fn symmetric_predicates_agree_on_constant_series() {
    let budget = SearchBudget::default();
    for n in 1..=3 {
        for c in 2..=6 {
            let a = NakAlgebra::cycle(&vec![c; n]).unwrap();
            let t = Arc::new(nakayama_to_table(&a, FieldSpec::Prime(2)).unwrap());
            let linear = is_symmetric(&t, &budget).unwrap();
            assert_eq!(linear, Decision::from_bool(c % n == 1 % n), "n={n} c={c}");
            assert_eq!(a.is_symmetric(), linear.is_true(), "n={n} c={c}");
        }
    }
}

#[test]
fn radical_powers_of_symmetric_algebras_are_not_rigid() {
    let budget = SearchBudget::default();
    for n in 1..=3 {
        for a in cyclic_series(n, 7)
            .into_iter()
            .filter(NakAlgebra::is_symmetric)
        {
            let t = Arc::new(nakayama_to_table(&a, FieldSpec::Prime(2)).unwrap());
            let powers = t.radical().unwrap().powers.clone();
            for (k, ideal) in powers.iter().enumerate() {
                if ideal.dim() == 0 {
                    continue;
                }
                let r = check_ideal_rigidity(&t, ideal, &budget).unwrap();
                assert!(r.holds, "{} J^{}: {r:?}", a.label(), k + 1);
            }
        }
    }
}
