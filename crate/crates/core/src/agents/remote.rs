use std::sync::{Condvar, Mutex};
use std::time::Duration;

use serde::{Deserialize, Serialize};
use serde_json::{json, Value};

use super::{Agent, AgentError, AgentRequest};

/// Wire dialect of the completion endpoint.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Default, Serialize, Deserialize)]
#[serde(rename_all = "snake_case")]
pub enum Provider {
    /// `choices[0].message.content`, bearer token.
    #[default]
    OpenAi,
    /// `content[*].text`, `x-api-key` header.
    Anthropic,
}

fn default_max_tokens() -> u32 {
    4096
}
fn default_timeout() -> u64 {
    120
}
fn default_retries() -> u32 {
    3
}
fn default_in_flight() -> usize {
    4
}
fn default_backoff() -> u64 {
    500
}

#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
pub struct RemoteSpec {
    #[serde(default)]
    pub id: Option<String>,
    pub endpoint: String,
    pub model: String,
    /// Name of the environment variable holding the credential.
    pub credential_env: String,
    #[serde(default)]
    pub provider: Provider,
    #[serde(default = "default_max_tokens")]
    pub max_output_tokens: u32,
    #[serde(default = "default_timeout")]
    pub timeout_secs: u64,
    #[serde(default = "default_retries")]
    pub retries: u32,
    #[serde(default = "default_in_flight")]
    pub max_in_flight: usize,
    /// First retry delay; doubles on each further retry.
    #[serde(default = "default_backoff")]
    pub backoff_ms: u64,
}

impl RemoteSpec {
    pub fn new(endpoint: impl Into<String>, model: impl Into<String>, credential_env: impl Into<String>) -> RemoteSpec {
        RemoteSpec {
            id: None,
            endpoint: endpoint.into(),
            model: model.into(),
            credential_env: credential_env.into(),
            provider: Provider::OpenAi,
            max_output_tokens: default_max_tokens(),
            timeout_secs: default_timeout(),
            retries: default_retries(),
            max_in_flight: default_in_flight(),
            backoff_ms: default_backoff(),
        }
    }

    pub fn agent_id(&self) -> String {
        self.id.clone().unwrap_or_else(|| self.model.clone())
    }
}

/// Counting semaphore bounding concurrent requests.
struct InFlight {
    busy: Mutex<usize>,
    freed: Condvar,
    max: usize,
}

struct Slot<'a>(&'a InFlight);

impl InFlight {
    fn acquire(&self) -> Slot<'_> {
        let mut busy = self.busy.lock().unwrap_or_else(|e| e.into_inner());
        while *busy >= self.max {
            busy = self.freed.wait(busy).unwrap_or_else(|e| e.into_inner());
        }
        *busy += 1;
        Slot(self)
    }
}

impl Drop for Slot<'_> {
    fn drop(&mut self) {
        let mut busy = self.0.busy.lock().unwrap_or_else(|e| e.into_inner());
        *busy -= 1;
        self.0.freed.notify_one();
    }
}

/// Sends the prompt as a single user message to a chat-completion
/// endpoint and returns the raw text.
pub struct RemoteLlmAgent {
    spec: RemoteSpec,
    id: String,
    credential: String,
    http: ureq::Agent,
    limiter: InFlight,
}

impl std::fmt::Debug for RemoteLlmAgent {
    fn fmt(&self, f: &mut std::fmt::Formatter<'_>) -> std::fmt::Result {
        f.debug_struct("RemoteLlmAgent").field("spec", &self.spec).field("credential", &"[redacted]").finish()
    }
}

enum Failure {
    Retry(AgentError),
    Fatal(AgentError),
}

impl RemoteLlmAgent {
    /// Reads the credential from the environment. A missing credential is
    /// a configuration error raised before any request.
    pub fn new(spec: RemoteSpec) -> Result<RemoteLlmAgent, AgentError> {
        let credential = std::env::var(&spec.credential_env)
            .ok()
            .filter(|v| !v.is_empty())
            .ok_or_else(|| AgentError::Config(format!("environment variable {} is not set", spec.credential_env)))?;
        Self::with_credential(spec, credential)
    }

    pub fn with_credential(spec: RemoteSpec, credential: String) -> Result<RemoteLlmAgent, AgentError> {
        if spec.max_in_flight == 0 {
            return Err(AgentError::Config("max_in_flight must be at least 1".into()));
        }
        if credential.is_empty() {
            return Err(AgentError::Config("empty credential".into()));
        }
        let config = ureq::Agent::config_builder()
            .timeout_global(Some(Duration::from_secs(spec.timeout_secs)))
            .http_status_as_error(false)
            .build();
        Ok(RemoteLlmAgent {
            id: spec.agent_id(),
            limiter: InFlight { busy: Mutex::new(0), freed: Condvar::new(), max: spec.max_in_flight },
            spec,
            credential,
            http: ureq::Agent::new_with_config(config),
        })
    }

    pub fn spec(&self) -> &RemoteSpec {
        &self.spec
    }

    fn redact(&self, text: &str) -> String {
        text.replace(&self.credential, "[redacted]")
    }

    fn body(&self, prompt: &str) -> Value {
        json!({
            "model": self.spec.model,
            "messages": [{"role": "user", "content": prompt}],
            "max_tokens": self.spec.max_output_tokens,
        })
    }

    fn attempt(&self, prompt: &str) -> Result<String, Failure> {
        let _slot = self.limiter.acquire();
        let request = self.http.post(&self.spec.endpoint).header("content-type", "application/json");
        let request = match self.spec.provider {
            Provider::OpenAi => request.header("authorization", &format!("Bearer {}", self.credential)),
            Provider::Anthropic => {
                request.header("x-api-key", &self.credential).header("anthropic-version", "2023-06-01")
            }
        };
        let mut response = match request.send_json(self.body(prompt)) {
            Ok(r) => r,
            Err(e) => return Err(Failure::Retry(AgentError::Transport(self.redact(&e.to_string())))),
        };
        let status = response.status().as_u16();
        let text = response
            .body_mut()
            .read_to_string()
            .map_err(|e| Failure::Retry(AgentError::Transport(self.redact(&e.to_string()))))?;
        if status != 200 {
            let body: String = self.redact(&text).chars().take(200).collect();
            let err = AgentError::Http { status, body };
            return Err(if status == 429 || status >= 500 { Failure::Retry(err) } else { Failure::Fatal(err) });
        }
        let value: Value = serde_json::from_str(&text)
            .map_err(|e| Failure::Fatal(AgentError::Response(format!("invalid JSON: {e}"))))?;
        let content = match self.spec.provider {
            Provider::OpenAi => value["choices"][0]["message"]["content"].as_str().map(str::to_string),
            Provider::Anthropic => value["content"].as_array().map(|parts| {
                parts.iter().filter_map(|p| p["text"].as_str()).collect::<Vec<_>>().join("")
            }),
        };
        content
            .map(|c| self.redact(&c))
            .ok_or_else(|| Failure::Fatal(AgentError::Response("no completion text in response".into())))
    }
}

impl Agent for RemoteLlmAgent {
    fn id(&self) -> &str {
        &self.id
    }

    fn reply(&self, request: &AgentRequest) -> Result<String, AgentError> {
        let mut delay = Duration::from_millis(self.spec.backoff_ms);
        let mut tries = 0;
        loop {
            match self.attempt(&request.prompt) {
                Ok(text) => return Ok(text),
                Err(Failure::Fatal(e)) => return Err(e),
                Err(Failure::Retry(e)) if tries >= self.spec.retries => return Err(e),
                Err(Failure::Retry(_)) => {
                    std::thread::sleep(delay);
                    delay = (delay * 2).min(Duration::from_secs(30));
                    tries += 1;
                }
            }
        }
    }
}
