use nsoperad::bar::koszul_check;
use nsoperad::operads::{parse_spec, OperadPresentation, Comb3Term, CombShape, GeneratorId};
use nsoperad::quotient::BasisRule;
use nsoperad::linalg::rat;

fn main() {
    // Candidate 1: "nilpotent" half-associativity (xy)z = 0.
    let t = |shape, root: usize, upper: usize, c: i64| Comb3Term {
        shape, root: GeneratorId(root), upper: GeneratorId(upper), coeff: rat(c),
    };
    let nil = OperadPresentation::new(
        "halfzero", vec!["m".into()],
        vec![vec![t(CombShape::Left, 0, 0, 1)]],
    ).unwrap();
    let r = koszul_check(&nil, 5, BasisRule::Greedy).unwrap();
    println!("halfzero <=5: koszul {} failures {:?}", r.koszul, r.failures());

    // Candidate 2: anti-associativity (xy)z = -x(yz).
    let anti = OperadPresentation::new(
        "anti", vec!["m".into()],
        vec![vec![t(CombShape::Left, 0, 0, 1), t(CombShape::Right, 0, 0, 1)]],
    ).unwrap();
    let r = koszul_check(&anti, 5, BasisRule::Greedy).unwrap();
    println!("anti <=5: koszul {} failures {:?}", r.koszul, r.failures());
    let json = nsoperad::operads::to_spec_json(&anti);
    println!("{}", json);
    let back = parse_spec(json.as_bytes()).unwrap();
    println!("round trip ok: {}", back.same_presentation(&anti));
}
