use proptest::prelude::*;
use qhyp::qgroup::{conjugator, decompose, Elem};
use qhyp::qword::QWord;
use qhyp::word::Alphabet;
use qhyp::Rational;

/// Products of free words and fractional powers of the previous level.
fn qword(depth: u32) -> BoxedStrategy<QWord> {
    let leaf = (prop::sample::select(vec!['a', 'b']), any::<bool>())
        .prop_map(|(c, inv)| QWord::letter(c, inv));
    let free = prop::collection::vec(leaf, 1..4)
        .prop_map(QWord::product)
        .boxed();
    if depth == 0 {
        return free;
    }
    let exps = prop::sample::select(vec![
        Rational::new(1, 2),
        Rational::new(-1, 2),
        Rational::new(1, 3),
        Rational::new(2, 3),
        Rational::new(3, 2),
        Rational::from_integer(2),
    ]);
    let lower = qword(depth - 1);
    let atom = (lower.clone(), exps).prop_map(|(w, q)| QWord::power(w, q));
    prop::collection::vec(prop_oneof![1 => free, 1 => lower, 2 => atom], 1..4)
        .prop_map(QWord::product)
        .boxed()
}

fn eval(w: &QWord) -> Elem {
    w.eval(&Alphabet::new("ab").unwrap()).unwrap()
}

proptest! {
    #![proptest_config(ProptestConfig { cases: 96, ..ProptestConfig::default() })]

    #[test]
    fn group_axioms(x in qword(2), y in qword(2), z in qword(1)) {
        let (x, y, z) = (eval(&x), eval(&y), eval(&z));
        prop_assert_eq!(x.mul(&y).mul(&z), x.mul(&y.mul(&z)));
        prop_assert!(x.mul(&x.inv()).is_one());
        prop_assert_eq!(x.mul(&y).inv(), y.inv().mul(&x.inv()));
    }

    #[test]
    fn roots_are_unique(x in qword(2), n in 2i64..4) {
        let x = eval(&x);
        let r = x.pow_rational(Rational::new(1, n));
        prop_assert_eq!(r.pow(n), x.clone());
        prop_assert_eq!(x.pow(n).pow_rational(Rational::new(1, n)), x);
    }

    #[test]
    fn conjugation_axiom(g in qword(1), h in qword(2), q in prop::sample::select(vec![(1i64, 2i64), (2, 3), (-1, 2)])) {
        let (g, h) = (eval(&g), eval(&h));
        let q = Rational::new(q.0, q.1);
        prop_assert_eq!(g.conj(&h).pow_rational(q), g.pow_rational(q).conj(&h));
    }

    #[test]
    fn decomposition_is_a_class_invariant(x in qword(2), c in qword(2)) {
        let x = eval(&x);
        let c = eval(&c);
        let y = x.conj(&c);
        match (decompose(&x), decompose(&y)) {
            (None, None) => {}
            (Some(dx), Some(dy)) => {
                prop_assert_eq!(&dx.pivot, &dy.pivot);
                prop_assert_eq!(dx.exp, dy.exp);
                let back = dx.conj.mul(&dx.pivot.pow(dx.exp)).mul(&dx.conj.inv());
                prop_assert_eq!(back, x.clone());
                let k = conjugator(&x, &y).unwrap();
                prop_assert_eq!(x.conj(&k), y);
            }
            _ => prop_assert!(false, "identity mismatch"),
        }
    }
}

#[test]
fn generator_reaches_higher_layers() {
    use proptest::strategy::ValueTree;
    use proptest::test_runner::TestRunner;
    let mut runner = TestRunner::deterministic();
    let mut layers = [0usize; 4];
    for _ in 0..200 {
        let w = qword(3).new_tree(&mut runner).unwrap().current();
        layers[(eval(&w).layer() as usize).min(3)] += 1;
    }
    eprintln!("{layers:?}");
    assert!(layers[2] + layers[3] > 5, "{layers:?}");
}
