use chaintree_cli::{RunReport, Status};
use proptest::prelude::*;

fn status() -> impl Strategy<Value = Status> {
    prop_oneof![
        Just(Status::Success),
        Just(Status::InputError),
        Just(Status::Rejected),
        Just(Status::Mismatch),
    ]
}

fn report() -> impl Strategy<Value = RunReport> {
    (
        "[a-z]{1,9}",
        ".{0,40}",
        "[0-9]{1,120}",
        any::<u64>(),
        proptest::option::of(any::<u64>()),
        status(),
        ".{1,40}",
    )
        .prop_map(|(command, input, digits, wall_ns, ops, status, message)| {
            let mut r = if status == Status::Success {
                RunReport::success(&command, input, digits)
            } else {
                RunReport::failure(&command, input, status, message)
            };
            r.wall_ns = wall_ns;
            r.ops = ops;
            r
        })
}

proptest! {
    #[test]
    fn json_round_trips(r in report()) {
        let text = r.to_json();
        let back: RunReport = serde_json::from_str(&text).unwrap();
        prop_assert_eq!(&back, &r);
        prop_assert_eq!(back.result.is_some(), back.status == Status::Success);
    }
}
