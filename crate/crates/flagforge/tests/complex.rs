use flagforge::complex::*;
use flagforge::construct::{construct, AllocMode};
use num_bigint::BigInt;
use proptest::prelude::*;

fn fv(v: &[u64]) -> FaceVector {
    FaceVector::from_u64(v)
}

/// Count cliques by enumerating all vertex subsets.
fn subset_count(g: &VertexColoredGraph) -> Vec<u64> {
    let n = g.vertex_count();
    let mut f = vec![0u64; n + 1];
    for mask in 0u32..(1 << n) {
        let vs: Vec<usize> = (0..n).filter(|&i| mask >> i & 1 == 1).collect();
        let clique = vs.iter().enumerate().all(|(i, &u)| vs[i + 1..].iter().all(|&v| g.has_edge(u, v)));
        if clique {
            f[vs.len()] += 1;
        }
    }
    while f.len() > 1 && *f.last().unwrap() == 0 {
        f.pop();
    }
    f
}

#[test]
fn multipartite_edge_counts() {
    assert_eq!(build_multipartite(&[13, 12, 12]).edge_count(), 456);
    let g = build_multipartite(&[18, 18, 18]);
    assert_eq!(g.vertex_count(), 54);
    assert_eq!(full_f_vector(&g), fv(&[1, 54, 972, 5832]));
}

#[test]
fn complete_graph_is_simplex() {
    let g = build_multipartite(&[1; 6]);
    assert_eq!(full_f_vector(&g), fv(&[1, 6, 15, 20, 15, 6, 1]));
}

#[test]
fn face_to_h_examples() {
    assert_eq!(f_to_h(&fv(&[1, 4, 4])), HVector::from_i64(&[1, 2, 1]));
    assert_eq!(f_to_h(&fv(&[1, 3, 3, 1])), HVector::from_i64(&[1, 0, 0, 0]));
    // boundary of a triangle
    assert_eq!(f_to_h(&fv(&[1, 3, 3])), HVector::from_i64(&[1, 1, 1]));
    assert_eq!(h_to_f(&HVector::from_i64(&[1, 2, 1])).unwrap(), fv(&[1, 4, 4]));
    assert!(h_to_f(&HVector::from_i64(&[1, -5, 0])).is_err());
}

#[test]
fn plus_of_edge() {
    let g = build_multipartite(&[1, 1]);
    let p = plus_construction(&g).unwrap();
    assert_eq!(full_f_vector(&p), fv(&[1, 4, 4]));
    assert!(is_balanced(&p));
}

#[test]
fn plus_needs_proper_coloring() {
    let g = VertexColoredGraph::from_edges(vec![0, 0], &[(0, 1)]);
    assert!(g.is_err() || plus_construction(&g.unwrap()).is_err());
}

#[test]
fn balanced_examples() {
    assert!(is_balanced(&build_multipartite(&[3, 2, 4])));
    // five-cycle colored with three colors has clique number two
    let c5 = VertexColoredGraph::from_edges(vec![0, 1, 0, 1, 2], &[(0, 1), (1, 2), (2, 3), (3, 4), (4, 0)]).unwrap();
    assert!(!is_balanced(&c5));
}

#[test]
fn vertex_decomposable_examples() {
    let simplex = SimplicialComplexExplicit::from_faces(&[0b111]);
    assert!(is_vertex_decomposable(&simplex).unwrap());
    let two_edges = SimplicialComplexExplicit::from_faces(&[0b0011, 0b1100]);
    assert!(!is_vertex_decomposable(&two_edges).unwrap());
    let path = SimplicialComplexExplicit::from_faces(&[0b011, 0b110]);
    assert!(is_vertex_decomposable(&path).unwrap());
    let g = build_multipartite(&[2, 2, 2]);
    let octa = SimplicialComplexExplicit::from_graph(&g).unwrap();
    assert_eq!(octa.facets.len(), 8);
    assert!(is_vertex_decomposable(&octa).unwrap());
}

#[test]
fn plus_of_small_construction_is_decomposable() {
    let c = construct(&[1, 6, 9, 4], &AllocMode::Balanced).unwrap();
    let p = plus_construction(&c.graph).unwrap();
    assert!(p.vertex_count() <= DECOMPOSABLE_LIMIT);
    let cx = SimplicialComplexExplicit::from_graph(&p).unwrap();
    assert!(is_vertex_decomposable(&cx).unwrap());
    assert_eq!(f_to_h(&full_f_vector(&p)), HVector::from_i64(&[1, 6, 9, 4]));
}

#[test]
fn decomposable_limit_enforced() {
    let faces: Vec<u32> = (0..26).map(|i| 1u32 << i).collect();
    let c = SimplicialComplexExplicit::from_faces(&faces);
    assert!(is_vertex_decomposable(&c).is_err());
}

#[test]
fn json_and_edgelist_round_trip() {
    let c = construct(&[1, 20, 60, 40], &AllocMode::Balanced).unwrap();
    let g = c.graph;
    let text = serde_json::to_string(&g.to_file()).unwrap();
    let back = VertexColoredGraph::from_file(&serde_json::from_str(&text).unwrap()).unwrap();
    assert_eq!(back.edges(), g.edges());
    assert_eq!(back.colors(), g.colors());
    let el = VertexColoredGraph::from_edgelist(&g.to_edgelist()).unwrap();
    assert_eq!(el.edges(), g.edges());
    assert_eq!(el.colors(), g.colors());
}

#[test]
fn face_vector_json_is_plain_numbers() {
    let f = fv(&[1, 100, 1000, 2000]);
    assert_eq!(serde_json::to_string(&f).unwrap(), "[1,100,1000,2000]");
    let h = HVector::from_i64(&[1, -2, 3]);
    assert_eq!(serde_json::to_string(&h).unwrap(), "[1,-2,3]");
    assert_eq!(serde_json::from_str::<HVector>("[1,-2,3]").unwrap(), h);
}

#[test]
fn counts_independent_of_thread_count() {
    let g = construct(&[1, 100, 1000, 2000], &AllocMode::Balanced).unwrap().graph;
    let one = rayon::ThreadPoolBuilder::new().num_threads(1).build().unwrap();
    let four = rayon::ThreadPoolBuilder::new().num_threads(4).build().unwrap();
    let a = one.install(|| full_f_vector(&g));
    let b = four.install(|| full_f_vector(&g));
    assert_eq!(a, b);
    assert_eq!(a, fv(&[1, 100, 1000, 2000]));
}

fn arb_graph() -> impl Strategy<Value = VertexColoredGraph> {
    (1usize..=10).prop_flat_map(|n| {
        proptest::collection::vec(any::<bool>(), n * (n - 1) / 2).prop_map(move |bits| {
            let mut edges = Vec::new();
            let mut it = bits.into_iter();
            for u in 0..n {
                for v in u + 1..n {
                    if it.next().unwrap() {
                        edges.push((u, v));
                    }
                }
            }
            // every vertex its own color keeps the coloring proper
            VertexColoredGraph::from_edges((0..n as u32).collect(), &edges).unwrap()
        })
    })
}

proptest! {
    #[test]
    fn clique_counts_match_subsets(g in arb_graph()) {
        let f = full_f_vector(&g);
        let want: Vec<u64> = subset_count(&g);
        prop_assert_eq!(f, fv(&want));
    }

    #[test]
    fn h_round_trip(f in proptest::collection::vec(0u64..10_000, 1..6)) {
        let mut f = f;
        f.insert(0, 1);
        let f = fv(&f);
        let h = f_to_h(&f);
        prop_assert_eq!(h_to_f(&h).unwrap(), f.clone());
        for t in 1..=3 {
            let (l, r) = polynomial_sides(&f, &h, t);
            prop_assert_eq!(l, r);
        }
        prop_assert_eq!(h.0.iter().sum::<BigInt>(), BigInt::from(f.0.last().unwrap().clone()));
    }

    #[test]
    fn plus_adds_one_per_color(g in arb_graph()) {
        let p = plus_construction(&g).unwrap();
        prop_assert_eq!(p.vertex_count(), g.vertex_count() + g.palette() as usize);
        prop_assert!(p.is_properly_colored());
    }
}
