mod common;

use common::*;
use kdilation::brieskorn::{milnor_model, milnor_model_with, MilnorOptions};
use kdilation::dilation::{order_of_dilation, order_of_semidilation, Order, SplitS1Complex};
use kdilation::morphism::verify_functoriality;
use kdilation::tensor::{tensor, tensor_split, unit_embedding};
use kdilation::{Generator, S1Complex, SparseMatrix};

fn point(n: usize) -> SplitS1Complex {
    let c = S1Complex::with_differential(vec![Generator::new("e", 0)], SparseMatrix::zeros(1, 1), n).unwrap();
    SplitS1Complex::from_names(c, &["e"], "e").unwrap()
}

fn order(s: &SplitS1Complex) -> Order {
    order_of_dilation(s, s.truncation()).unwrap().order
}

#[test]
fn tensor_with_a_point_is_the_same_complex() {
    let s = milnor_model(2, 3).unwrap();
    let p = tensor(s.complex(), point(4).complex()).unwrap();
    assert_eq!(p.degrees(), s.complex().degrees());
    for r in 0..=p.truncation() {
        assert_eq!(p.delta(r), s.complex().delta(r));
    }
    let phi = unit_embedding(s.complex(), &point(4)).unwrap();
    assert!(phi.verify().valid);
    assert!(verify_functoriality(&phi).unwrap().valid);
}

#[test]
fn product_basis_is_all_pairs() {
    let s = milnor_model(2, 2).unwrap();
    let t = milnor_model(1, 2).unwrap();
    let p = tensor(s.complex(), t.complex()).unwrap();
    assert_eq!(p.dim(), s.complex().dim() * t.complex().dim());
    for a in s.complex().basis() {
        for b in t.complex().basis() {
            let i = p.index_of(&format!("{}⊗{}", a.name, b.name)).unwrap();
            assert_eq!(p.basis()[i].degree, a.degree + b.degree);
        }
    }
}

#[test]
fn products_of_random_complexes_are_valid() {
    for seed in 0..30 {
        let c = random_complex(seed, 6, 4);
        let d = random_complex(seed + 77, 6, 4);
        let p = tensor(&c, &d).unwrap();
        assert_eq!(p.truncation(), c.truncation().min(d.truncation()));
        assert!(p.verify_s1_relations().valid, "seed {seed}");
        check_square_zero(&p).unwrap();
    }
}

#[test]
fn product_splittings_are_valid() {
    for seed in 0..30 {
        let s = random_split_complex(seed, 6, 4);
        let t = random_split_complex(seed + 1000, 6, 4);
        let p = tensor_split(&s, &t).unwrap();
        assert!(p.verify_splitting().valid, "seed {seed}");
        let e = p.unit_in_zero();
        assert!(e.iter().any(|x| *x != kdilation::linalg::rat(0)));
    }
}

#[test]
fn product_of_milnor_22_and_33() {
    let p = tensor_split(&milnor_model(2, 2).unwrap(), &milnor_model(3, 3).unwrap()).unwrap();
    assert_eq!(order(&p), Order::Found { k: 1 });
}

#[test]
fn semidilation_order_of_products_is_at_most_the_minimum() {
    let options = MilnorOptions {
        spheres: false,
        ..MilnorOptions::default()
    };
    let gap = MilnorOptions {
        gap_generator: true,
        ..options.clone()
    };
    let models = [
        milnor_model_with(2, 2, &options).unwrap(),
        milnor_model_with(3, 3, &options).unwrap(),
        milnor_model_with(2, 3, &gap).unwrap(),
        milnor_model_with(3, 3, &gap).unwrap(),
    ];
    for s in &models {
        for t in &models {
            let p = tensor_split(s, t).unwrap();
            let n = p.truncation();
            let got = order_of_semidilation(&p, n).unwrap().order.found();
            let a = order_of_semidilation(s, n).unwrap().order.found();
            let b = order_of_semidilation(t, n).unwrap().order.found();
            if let (Some(a), Some(b)) = (a, b) {
                assert!(got.is_some_and(|g| g <= a.min(b)));
            }
        }
    }
}
