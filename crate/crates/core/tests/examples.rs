//! Worked examples on small named clutters and the Q_pq family.

use clutterlab::covering::{nu, nu_w, tau, tau_w};
use clutterlab::decompose::{decompose, verify_decomposition};
use clutterlab::lattice::{delta_r, group_is_free, rank_rational, smith_normal_form};
use clutterlab::oracle;
use clutterlab::polyhedron::{is_ideal, lp_values, one_half, polyhedron_vertices, DEFAULT_VERTEX_LIMIT};
use clutterlab::properties::*;
use clutterlab::qpq::*;
use clutterlab::suite::Q21_DISPLAY;
use clutterlab::*;

fn triangle() -> Clutter {
    Clutter::from_index_edges(3, &[&[0, 1], &[1, 2], &[0, 2]]).unwrap()
}

fn c4() -> Clutter {
    Clutter::from_index_edges(4, &[&[0, 1], &[1, 2], &[2, 3], &[3, 0]]).unwrap()
}

fn q11() -> Clutter {
    generate_qpq(1, 1).unwrap().clutter
}

fn q11_fstar() -> QpqClutter {
    generate_qpq_f(1, 1, &FSpec::case_i_all()).unwrap()
}

fn masks(c: &Clutter) -> Vec<u64> {
    c.edges().iter().map(|e| e.bits()).collect()
}

#[test]
fn q21_incidence_matches_display() {
    let g = generate_qpq(2, 1).unwrap();
    let at = g.clutter.incidence().transpose().to_i64_rows();
    let display: Vec<Vec<i64>> = Q21_DISPLAY
        .iter()
        .map(|r| r.iter().map(|&x| x as i64).collect())
        .collect();
    assert_eq!(at, display);
    assert_eq!(
        g.clutter.universe().names(),
        &["p1", "p2", "p1*", "p2*", "q1", "q1*", "r", "r*"]
    );
}

#[test]
fn family_sizes() {
    let g = generate_qpq(2, 2).unwrap();
    assert_eq!((g.clutter.n(), g.clutter.edge_count()), (10, 12));
    let f = generate_qpq_f(2, 2, &FSpec::case_i_all()).unwrap();
    assert_eq!(f.clutter.edge_count(), 16);
    assert_eq!(generate_qpq_f(2, 2, &FSpec::None).unwrap().clutter, g.clutter);
    let d = QpqDescriptor::new(1, 1).unwrap();
    let u = d.universe();
    assert_eq!(u.labels_of(d.f_pq()[0]), ["p1", "q1", "r"]);
}

#[test]
fn minimalize_drops_full_set() {
    let mut edges = q11().edges().to_vec();
    edges.push(VSet::full(6));
    let h = Hypergraph::new(q11().universe().clone(), edges).unwrap();
    assert_eq!(h.minimalize(), q11());
}

#[test]
fn q21_blocker_has_star_pairs() {
    let g = generate_qpq(2, 1).unwrap();
    let b = g.clutter.blocker().unwrap();
    for pair in g.descriptor.star_pairs() {
        assert!(b.contains_edge(pair), "{}", g.clutter.universe().format_set(pair));
    }
    assert_eq!(b.blocker().unwrap(), g.clutter);
}

#[test]
fn blocker_formulas_match_oracle() {
    for (p, q) in [(1, 1), (2, 1)] {
        let g = generate_qpq(p, q).unwrap();
        let mut f: Vec<u64> = masks(&blocker_formula_qpq(p, q).unwrap());
        f.sort_unstable();
        assert_eq!(f, oracle::blocker(g.clutter.n(), &masks(&g.clutter)));
    }
    let d = QpqDescriptor::new(1, 1).unwrap();
    let r_pair = VSet::from_indices([d.r_idx(), d.r_star_idx()]);
    assert!(blocker_formula_qpq(1, 1).unwrap().contains_edge(r_pair));
}

#[test]
fn case_i_full_star_blocker_has_only_pairs_and_mixed() {
    // Every star-complement edge is present, so types e-h drop out.
    let b = blocker_formula_qpq_f(1, 1, &FSpec::case_i_all()).unwrap();
    let d = QpqDescriptor::new(1, 1).unwrap();
    let pairs = d.star_pairs();
    assert!(b.edges().iter().all(|t| pairs.contains(t)));
}

#[test]
fn case_ii_full_at_one_one_is_q11() {
    // F_11 is all of E_11, so F' = F_11 leaves F empty.
    let g = generate_qpq_f(1, 1, &FSpec::case_ii_all()).unwrap();
    assert_eq!(g.clutter, q11());
    let b = blocker_formula_qpq_f(1, 1, &FSpec::case_ii_all()).unwrap();
    assert_eq!(b, q11().blocker().unwrap());
}

#[test]
fn minor_commutation_on_q11() {
    let c = q11();
    let b = c.blocker().unwrap();
    for i in 0..6 {
        let s = VSet::singleton(i);
        assert_eq!(c.delete(s).unwrap().blocker_total().sorted_edges(), b.contract(s).unwrap().sorted_edges());
        assert_eq!(c.contract(s).unwrap().blocker_total().sorted_edges(), b.delete(s).unwrap().sorted_edges());
    }
}

#[test]
fn tau_nu_examples() {
    assert_eq!(tau(&Clutter::from_index_edges(2, &[&[0, 1]]).unwrap()).unwrap().integer(), 1);
    assert_eq!(nu(&Clutter::from_index_edges(4, &[&[0, 1], &[2, 3]]).unwrap()).integer(), 2);
    assert_eq!(tau(&q11()).unwrap().integer(), 2);
    assert_eq!(nu(&q11()).integer(), 1);
    for f in FSpec::all_packing_specs().into_iter().take(15) {
        let g = generate_qpq_f(2, 2, &f).unwrap();
        assert_eq!(tau(&g.clutter).unwrap().integer(), 2, "{f}");
        assert_eq!(nu(&g.clutter).integer(), 2, "{f}");
    }
}

#[test]
fn weighted_examples() {
    let c = q11();
    let zero = WeightVector::constant(6, 0);
    assert_eq!(tau_w(&c, &zero).unwrap().integer(), 0);
    assert_eq!(nu_w(&c, &zero).unwrap().integer(), 0);
    let ones = WeightVector::constant(6, 1);
    assert_eq!(tau_w(&c, &ones).unwrap().integer(), 2);
    assert_eq!(nu_w(&c, &ones).unwrap().integer(), 1);
    let single = Clutter::from_index_edges(2, &[&[0, 1]]).unwrap();
    assert_eq!(nu_w(&single, &WeightVector::constant(2, 2)).unwrap().integer(), 2);
    let w = WeightVector::new(6, vec![3, 0, 2, 1, 3, 2]).unwrap();
    let rep = tau_w(&c, &w).unwrap();
    assert!(rep.verify(&c, Some(&w)));
    assert_eq!(Some(rep.integer()), oracle::tau_w(6, &masks(&c), w.as_slice()));
}

#[test]
fn polyhedron_examples() {
    let single = Clutter::from_index_edges(1, &[&[0]]).unwrap();
    let vs = polyhedron_vertices(&single, DEFAULT_VERTEX_LIMIT).unwrap();
    assert_eq!(vs.len(), 1);
    assert!(is_ideal(&Clutter::from_index_edges(2, &[&[0, 1]]).unwrap(), 8).unwrap().ideal);
    assert!(is_ideal(&q11(), 8).unwrap().ideal);
    let t = is_ideal(&triangle(), 8).unwrap();
    assert!(!t.ideal);
    assert!(t.fractional_vertex.unwrap().0.iter().all(|x| *x == one_half()));
    let lp = lp_values(&triangle(), &WeightVector::constant(3, 1), 8).unwrap();
    assert_eq!(lp.min_side, lp.max_side);
    assert_eq!(lp.min_side, clutterlab::polyhedron::rational(3, 2));
}

#[test]
fn konig_and_packing_examples() {
    assert!(has_konig(&c4()));
    assert!(!has_konig(&q11()));
    let rep = has_packing_property(&q11()).unwrap();
    assert!(!rep.packs);
    let fail = rep.failing.unwrap();
    assert_eq!((fail.spec.deletions, fail.spec.contractions), (VSet::EMPTY, VSet::EMPTY));
    assert!(has_packing_property(&q11_fstar().clutter).unwrap().packs);
    let edgeless = Clutter::edgeless(VertexUniverse::numbered(3).unwrap());
    assert!(has_packing_property(&edgeless).unwrap().packs);
}

#[test]
fn mengerian_examples() {
    assert!(is_mengerian_bounded(&q11_fstar().clutter, 3).unwrap().passed());
    let single = Clutter::from_index_edges(2, &[&[0, 1]]).unwrap();
    assert!(is_mengerian_bounded(&single, 4).unwrap().passed());
    let mut opts = MengerianOptions::new(1);
    opts.skip_ideal_gate = true;
    match is_mengerian_bounded_with(&q11(), &opts).unwrap().verdict {
        MengerianVerdict::Fail { w, .. } => assert_eq!(w, vec![1; 6]),
        v => panic!("{v:?}"),
    }
    assert_eq!(
        mengerian_witness_edge(&single, &WeightVector::new(2, vec![1, 1]).unwrap()).unwrap(),
        Some(0)
    );
    let g = q11_fstar();
    let k = mengerian_witness_edge(&g.clutter, &WeightVector::constant(6, 1)).unwrap().unwrap();
    let e = g.clutter.edges()[k];
    let d = &g.descriptor;
    assert!(d.f_pq().contains(&e) || d.f_pq_star().contains(&e));
    assert_eq!(mengerian_witness_edge(&q11(), &WeightVector::constant(6, 1)).unwrap(), None);
}

#[test]
fn two_partition_examples() {
    assert!(find_2partition(&triangle()).is_none());
    assert_eq!(find_2partition(&c4()).unwrap().blocks, vec![(0, 2), (1, 3)]);
    let g = generate_qpq_f(2, 1, &FSpec::case_i_all()).unwrap();
    let part = find_2partition(&g.clutter).unwrap();
    let rr = check_rank_prop(&g.clutter, &part).unwrap();
    assert_eq!((rr.rank_a, rr.rank_b), (5, 5));
    assert_eq!(rank_rational(&g.clutter.augmented_incidence()), 5);
    let (w, wp) = rank_witness(4);
    let rr = check_rank_prop(&w, &wp).unwrap();
    assert_eq!(rr.maximal_rank, Some(true));
}

fn rank_witness(d: usize) -> (Clutter, TwoPartition) {
    clutterlab::random::rank_witness_clutter(d)
}

#[test]
fn dichotomy_examples() {
    let g = q11_fstar();
    let part = find_2partition(&g.clutter).unwrap();
    for w in 1..64u64 {
        let spec = MinorSpec::new(VSet(w), VSet::EMPTY).unwrap();
        assert!(check_minor_dichotomy(&g.clutter, &part, &spec).unwrap().holds);
    }
    let empty = MinorSpec::new(VSet::EMPTY, VSet::EMPTY).unwrap();
    assert!(check_minor_dichotomy(&g.clutter, &part, &empty).is_err());
}

#[test]
fn dichotomy_exhaustive_on_six_vertices() {
    let mut specs = vec![FSpec::None];
    specs.extend(FSpec::all_packing_specs());
    for f in &specs {
        let g = generate_qpq_f(1, 1, f).unwrap();
        let part = find_2partition(&g.clutter).unwrap();
        for code in 1..729 {
            let spec = MinorSpec::from_code(code, 6);
            if let Ok(r) = check_minor_dichotomy(&g.clutter, &part, &spec) {
                assert!(r.holds, "{f} {}", spec.describe(g.clutter.universe()));
            }
        }
    }
}

#[test]
fn classification_examples() {
    let single = Clutter::from_index_edges(3, &[&[0, 1]]).unwrap();
    let cl = classify(&single).unwrap();
    assert!(cl.binary && cl.dyadic && cl.balanced);
    let g = generate_qpq_f(2, 2, &FSpec::case_i_all()).unwrap();
    let cl = classify(&g.clutter).unwrap();
    assert!(!cl.binary && !cl.dyadic && !cl.balanced);
}

#[test]
fn lattice_examples() {
    assert_eq!(rank_rational(&IntegerMatrix::identity(4)), 4);
    assert_eq!(rank_rational(&IntegerMatrix::zeros(3, 2)), 0);
    let d = IntegerMatrix::from_rows(&[vec![2, 0], vec![0, 2]]);
    let s = smith_normal_form(&d);
    assert_eq!(s.delta(2), Some(4.into()));
    assert!(smith_normal_form(&IntegerMatrix::identity(3)).is_unimodular_lattice());
    assert_eq!(delta_r(&IntegerMatrix::from_rows(&[vec![2, 0], vec![0, 4]])).unwrap(), 8.into());
    assert!(!group_is_free(&IntegerMatrix::from_columns(&[vec![2, 0]])));
    assert!(group_is_free(&IntegerMatrix::identity(3)));
    for (p, q) in [(1, 1), (2, 1), (1, 2), (2, 2)] {
        let g = generate_qpq_f(p, q, &FSpec::case_i_all()).unwrap();
        assert_eq!(delta_r(&g.clutter.augmented_incidence()).unwrap(), 1.into());
        let l = l_submatrix(&g.descriptor, &g.clutter).unwrap();
        assert_eq!(l.determinant().magnitude(), &1u32.into());
    }
}

#[test]
fn decomposition_examples() {
    let g = q11_fstar();
    let t = decompose(&g, &[1; 6]).unwrap();
    assert_eq!(t.edges.len(), 2);
    assert!(verify_decomposition(&g, &[1; 6], &t.edge_sets(&g)));
    assert!(decompose(&g, &[0; 6]).unwrap().edges.is_empty());
    let w = [2, 1, 0, 2, 1, 1];
    let t = decompose(&g, &w).unwrap();
    let mut m = t.edge_sets(&g);
    assert!(verify_decomposition(&g, &w, &m));
    m.pop();
    assert!(!verify_decomposition(&g, &w, &m));
    let e = g.clutter.edges()[0];
    assert!(!verify_decomposition(&g, &[1; 6], &[e, e]));
    assert!(decompose(&generate_qpq(1, 1).unwrap(), &[1; 6]).is_err());
}
