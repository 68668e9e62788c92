use kravchuk_cli::parse::{parse_ast, parse_expr, Expr};
use kravchuk_core::arith::{rat, Rational};
use kravchuk_core::poly::{render, Monomial, Polynomial, Variable};
use proptest::prelude::*;

fn variable() -> impl Strategy<Value = Variable> {
    prop_oneof![
        (0u32..=12).prop_map(Variable::Indexed),
        Just(Variable::X),
        Just(Variable::A),
    ]
}

fn coeff() -> impl Strategy<Value = Rational> {
    (-1000i64..=1000, 1i64..=50).prop_map(|(n, d)| rat(n, d))
}

fn poly() -> impl Strategy<Value = Polynomial> {
    let mono = prop::collection::vec((variable(), 1u32..=5), 0..=4).prop_map(Monomial::from_pairs);
    prop::collection::vec((coeff(), mono), 0..=6).prop_map(Polynomial::from_terms)
}

proptest! {
    #![proptest_config(ProptestConfig::with_cases(1000))]

    #[test]
    fn text_round_trip(p in poly()) {
        let text = render::to_text(&p);
        prop_assert_eq!(parse_expr(&text).unwrap(), p);
    }

    #[test]
    fn render_parse_is_stable(p in poly()) {
        let once = render::to_text(&parse_expr(&render::to_text(&p)).unwrap());
        prop_assert_eq!(once, render::to_text(&p));
    }
}

#[test]
fn ast_shape() {
    let e = parse_ast("-x1^2 + 3/4*a").unwrap();
    let expected = Expr::Add(
        Box::new(Expr::Neg(Box::new(Expr::Pow(Box::new(Expr::Var(Variable::Indexed(1))), 2)))),
        Box::new(Expr::Mul(Box::new(Expr::Const(rat(3, 4))), Box::new(Expr::Var(Variable::A)))),
    );
    assert_eq!(e, expected);
}
