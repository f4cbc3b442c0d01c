use serde::{Deserialize, Serialize};

/// Outcome class of a command; mirrors the process exit code.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize, Deserialize)]
#[serde(rename_all = "snake_case")]
pub enum Status {
    Success,
    InputError,
    Rejected,
    Mismatch,
}

impl Status {
    pub fn exit_code(self) -> u8 {
        match self {
            Status::Success => 0,
            Status::InputError => 1,
            Status::Rejected => 2,
            Status::Mismatch => 3,
        }
    }
}

/// Machine-readable record of one command run.
///
/// `result` is present exactly when `status` is `Success`; integers are
/// written as full decimal strings.
#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
pub struct RunReport {
    pub command: String,
    pub input: String,
    #[serde(default, skip_serializing_if = "Option::is_none")]
    pub result: Option<String>,
    pub wall_ns: u64,
    #[serde(default, skip_serializing_if = "Option::is_none")]
    pub ops: Option<u64>,
    pub status: Status,
    #[serde(default, skip_serializing_if = "Option::is_none")]
    pub message: Option<String>,
}

impl RunReport {
    pub fn success(command: &str, input: String, result: String) -> Self {
        RunReport {
            command: command.to_string(),
            input,
            result: Some(result),
            wall_ns: 0,
            ops: None,
            status: Status::Success,
            message: None,
        }
    }

    pub fn failure(command: &str, input: String, status: Status, message: String) -> Self {
        debug_assert_ne!(status, Status::Success);
        RunReport {
            command: command.to_string(),
            input,
            result: None,
            wall_ns: 0,
            ops: None,
            status,
            message: Some(message),
        }
    }

    pub fn to_json(&self) -> String {
        serde_json::to_string(self).expect("report serialization is infallible")
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn json_shape() {
        let mut r = RunReport::success("count", "spec (1,1;2,2)".into(), "4".into());
        r.ops = Some(12);
        r.wall_ns = 1500;
        assert_eq!(
            r.to_json(),
            r#"{"command":"count","input":"spec (1,1;2,2)","result":"4","wall_ns":1500,"ops":12,"status":"success"}"#
        );
        let f = RunReport::failure("recognize", "t.txt".into(), Status::Rejected, "OddCycle".into());
        assert_eq!(
            f.to_json(),
            r#"{"command":"recognize","input":"t.txt","wall_ns":0,"status":"rejected","message":"OddCycle"}"#
        );
    }

    #[test]
    fn exit_codes() {
        assert_eq!(Status::Success.exit_code(), 0);
        assert_eq!(Status::InputError.exit_code(), 1);
        assert_eq!(Status::Rejected.exit_code(), 2);
        assert_eq!(Status::Mismatch.exit_code(), 3);
    }
}
