use std::path::PathBuf;
use std::sync::Arc;

use qhadr_core::adr::AdrModule;
use qhadr_core::basic::BasicAlgebra;
use qhadr_core::chain::{find_rejective_chain, verify_rejective_chain, DEFAULT_SEARCH_BOUND};
use qhadr_core::module::{hom_space, Module};
use qhadr_core::qh::{find_strongly_qh_order, four_conditions_suite, QhError, DEFAULT_GLDIM_CAP};
use qhadr_core::{parse_module_file, parse_presentation, Presentation, Prime, DEFAULT_CAP};

fn data(name: &str) -> String {
    let path = PathBuf::from(env!("CARGO_MANIFEST_DIR")).join("../../data").join(name);
    std::fs::read_to_string(path).unwrap()
}

fn pres(name: &str) -> Arc<Presentation> {
    Arc::new(parse_presentation(&data(name), Prime::DEFAULT, DEFAULT_CAP).unwrap())
}

fn adr(quiver: &str, module: &str) -> AdrModule {
    parse_module_file(&pres(quiver), &data(module)).unwrap()
}

fn gldim(a: &AdrModule) -> usize {
    BasicAlgebra::from_modules(a.catalog()).unwrap().global_dimension(DEFAULT_GLDIM_CAP).unwrap()
}

#[test]
fn algebra_sizes() {
    for (q, dim, m) in [("ex22.quiver", 9, 3), ("loop.quiver", 5, 3), ("semisimple.quiver", 2, 1), ("trunc4.quiver", 4, 4)] {
        let p = pres(q);
        assert_eq!((p.dim(), p.loewy_length()), (dim, m), "{q}");
    }
}

#[test]
fn example_hom_dimensions() {
    let a = adr("ex22.quiver", "ex22.module");
    let l = a.locals();
    assert_eq!(l[1].dims(), &[1, 1, 0, 1]);
    assert_eq!(l[2].dims(), &[1, 1, 1, 0]);
    // the two quotients of P(1) by a simple socle summand admit no maps between them
    assert_eq!(hom_space(&l[1], &l[2]).dim(), 0);
    assert_eq!(hom_space(&l[2], &l[1]).dim(), 0);

    let lp = adr("loop.quiver", "loop.module");
    let p1 = &lp.locals()[0];
    assert_eq!(hom_space(p1, p1).dim(), 3);
}

/// The displayed quiver with relations of the endomorphism algebra: an
/// arrow `X -> Y` stands for an irreducible map `Y -> X`, so paths from `X`
/// to `Y` count `Hom(Y, X)`.
#[test]
fn endomorphism_algebra_matches_displayed_presentation() {
    let a = adr("ex22.quiver", "ex22.module");
    let q = pres("ex22_endo.quiver");
    let order = ["P(1)/S(4)", "P(1)", "P(1)/S(3)", "P(1)/P(1)J^2", "P(2)/S(3)", "S(1)", "S(2)"];
    let idx: Vec<usize> = order.iter().map(|l| a.index_of(l).unwrap()).collect();
    let mut paths = vec![vec![0usize; 7]; 7];
    for path in q.basis() {
        paths[path.start][q.quiver().end(path)] += 1;
    }
    for x in 0..7 {
        for y in 0..7 {
            let hom = hom_space(&a.catalog()[idx[y]], &a.catalog()[idx[x]]).dim();
            assert_eq!(paths[x][y], hom, "{} -> {}", order[x], order[y]);
        }
    }
    let b = BasicAlgebra::from_modules(a.catalog()).unwrap();
    assert_eq!(b.dim(), q.dim());
    assert_eq!(b.ext_quiver().iter().flatten().sum::<usize>(), q.quiver().arrows().len());
}

#[test]
fn star_family() {
    for n in 2..=5 {
        let m = adr(&format!("star{n}.quiver"), &format!("star{n}.module"));
        assert_eq!(m.len(), 1 << (n - 1));
        assert_eq!(m.stratify().unwrap().n_m(), n);
        let gl = gldim(&m);
        assert!(gl <= n);
        if n >= 3 {
            assert_eq!(gl, n - 1);
        } else {
            // B is the path algebra of a single arrow here
            assert_eq!(gl, 1);
        }
        let regular = adr(&format!("star{n}.quiver"), "regular.module");
        assert_eq!(gldim(&regular), 2);
        let r = four_conditions_suite(&pres(&format!("star{n}.quiver")), DEFAULT_SEARCH_BOUND, DEFAULT_GLDIM_CAP).unwrap();
        assert!(r.strongly_qh && r.layer_chain_rejective && r.gldim_two && r.radical_in_add);
    }
}

#[test]
fn single_simple_has_one_layer() {
    let p = pres("ex22.quiver");
    let m = parse_module_file(&p, "local S 2\n").unwrap();
    assert_eq!(m.stratify().unwrap().n_m(), 1);
    assert_eq!(gldim(&m), 0);
}

#[test]
fn semisimple_algebra() {
    let m = adr("semisimple.quiver", "regular.module");
    assert_eq!(gldim(&m), 0);
    assert!(matches!(
        four_conditions_suite(&pres("semisimple.quiver"), DEFAULT_SEARCH_BOUND, DEFAULT_GLDIM_CAP),
        Err(QhError::LoewyLengthOne)
    ));
}

#[test]
fn example_chain_is_rejective() {
    let a = adr("ex22.quiver", "ex22.module");
    let b = BasicAlgebra::from_modules(a.catalog()).unwrap();
    // gl B = 2 here, so a rejective chain must exist; the radical-layer one is such a chain
    assert_eq!(b.global_dimension(DEFAULT_GLDIM_CAP).unwrap(), 2);
    assert!(verify_rejective_chain(&b, &a.adr_chain().unwrap()).ok());
}

#[test]
fn four_conditions_on_small_algebras() {
    let k = four_conditions_suite(&pres("kronecker.quiver"), DEFAULT_SEARCH_BOUND, DEFAULT_GLDIM_CAP).unwrap();
    assert!(k.strongly_qh && k.radical_in_add);
    let c = four_conditions_suite(&pres("commutative.quiver"), DEFAULT_SEARCH_BOUND, DEFAULT_GLDIM_CAP).unwrap();
    assert!(!c.strongly_qh && !c.radical_in_add && !c.gldim_two && !c.layer_chain_rejective);
    assert_eq!(c.global_dimension, 3);
}

#[test]
fn search_and_exhaustive_orders_agree_on_loop_example() {
    let a = adr("loop.quiver", "loop.module");
    let b = BasicAlgebra::from_modules(a.catalog()).unwrap();
    assert!(find_rejective_chain(&b, DEFAULT_SEARCH_BOUND).unwrap().is_some());
    assert!(find_strongly_qh_order(&b, 6).unwrap().is_some());
}

#[test]
fn loop_example_radical_projection() {
    let p = pres("loop.quiver");
    let p1 = Module::projective(&p, 0);
    assert_eq!(p1.dims(), &[3, 1]);
    assert_eq!(p1.socle().dims(), vec![1, 1]);
}
