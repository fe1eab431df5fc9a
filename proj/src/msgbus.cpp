#include "uavsim/msgbus.hpp"

#include <algorithm>
#include <cstdio>

#include <json.hpp>

#include "uavsim/errors.hpp"

namespace uavsim {

const char* to_string(PayloadKind kind) {
  switch (kind) {
    case PayloadKind::kLaserScan: return "LaserScan";
    case PayloadKind::kOdometry: return "Odometry";
    case PayloadKind::kImu: return "Imu";
    case PayloadKind::kDepthImage: return "DepthImage";
    case PayloadKind::kPointCloud: return "PointCloud";
    case PayloadKind::kAttitudeCommand: return "AttitudeCommand";
    case PayloadKind::kConfidenceMap: return "ConfidenceMap";
    case PayloadKind::kEdgeImage: return "EdgeImage";
  }
  return "?";
}

PayloadKind payload_kind(const Payload& payload) {
  return static_cast<PayloadKind>(payload.index());
}

std::size_t payload_bytes(PayloadKind kind) {
  switch (kind) {
    case PayloadKind::kImu: return 329;            // 96.51 KB/s at 300.31 Hz
    case PayloadKind::kOdometry: return 716;       // 5.31 KB/s at 7.59 Hz
    case PayloadKind::kLaserScan: return 723;      // 37 kbit/s at 6.4 Hz
    case PayloadKind::kDepthImage: return 262981;  // 1.55 MB/s at 6.18 Hz
    case PayloadKind::kPointCloud: return 262981;
    case PayloadKind::kAttitudeCommand: return 64;
    case PayloadKind::kConfidenceMap: return 9216;  // 64x36 floats
    case PayloadKind::kEdgeImage: return 2304;
  }
  return 0;
}

void MessageBus::register_topic(const TopicSpec& spec) {
  if (topics_.count(spec.name) > 0) {
    throw_error(ErrorCategory::kValidation, "topic already registered: " + spec.name);
  }
  if (!(spec.nominal_rate > 0.0)) {
    throw_error(ErrorCategory::kValidation, "nominal_rate must be positive: " + spec.name);
  }
  TopicState state;
  state.spec = spec;
  topics_.emplace(spec.name, std::move(state));
}

const TopicSpec& MessageBus::topic_spec(const std::string& topic) const {
  return topic_state(topic).spec;
}

const MessageBus::TopicState& MessageBus::topic_state(const std::string& topic) const {
  auto it = topics_.find(topic);
  if (it == topics_.end()) {
    throw_error(ErrorCategory::kValidation, "unknown topic: " + topic);
  }
  return it->second;
}

void MessageBus::register_publisher(const std::string& node, const std::string& topic) {
  auto it = topics_.find(topic);
  if (it == topics_.end()) {
    throw_error(ErrorCategory::kValidation, "unknown topic: " + topic);
  }
  auto& pubs = it->second.publisher_nodes;
  if (std::find(pubs.begin(), pubs.end(), node) == pubs.end()) pubs.push_back(node);
}

int MessageBus::subscribe(const std::string& node, const std::string& topic) {
  auto it = topics_.find(topic);
  if (it == topics_.end()) {
    throw_error(ErrorCategory::kValidation, "unknown topic: " + topic);
  }
  const int id = static_cast<int>(queues_.size());
  queues_.emplace_back();
  subscriber_names_.emplace_back(node, topic);
  it->second.subscribers.push_back(id);
  return id;
}

void MessageBus::publish(const std::string& topic, double stamp, std::size_t payload_size,
                         Payload payload) {
  auto it = topics_.find(topic);
  if (it == topics_.end()) {
    throw_error(ErrorCategory::kValidation, "unknown topic: " + topic);
  }
  TopicState& state = it->second;
  if (payload_kind(payload) != state.spec.kind) {
    throw_error(ErrorCategory::kValidation,
                "payload kind " + std::string(to_string(payload_kind(payload))) +
                    " does not match topic " + topic + " (" +
                    to_string(state.spec.kind) + ")");
  }
  if (stamp < state.last_stamp) {
    throw_error(ErrorCategory::kValidation, "non-monotone stamp on topic " + topic);
  }

  MessageEnvelope env;
  env.topic = topic;
  env.seq = state.next_seq++;
  env.stamp = stamp;
  env.payload_size = payload_size;
  env.payload = std::move(payload);

  state.last_stamp = stamp;
  state.history.emplace_back(stamp, payload_size);
  for (int id : state.subscribers) {
    auto& q = queues_[static_cast<std::size_t>(id)];
    q.push_back(env);
    if (options_.max_queue > 0 && q.size() > options_.max_queue) q.pop_front();
  }
}

std::deque<MessageEnvelope>& MessageBus::queue(int subscriber_id) {
  return queues_.at(static_cast<std::size_t>(subscriber_id));
}

const std::deque<MessageEnvelope>& MessageBus::queue(int subscriber_id) const {
  return queues_.at(static_cast<std::size_t>(subscriber_id));
}

std::uint64_t MessageBus::published_count(const std::string& topic) const {
  return topic_state(topic).next_seq;
}

namespace {

// Count of history entries with stamp in (t_end - window, t_end] and their
// byte total. The window is anchored at the latest stamp on the topic.
std::pair<std::uint64_t, std::uint64_t> window_totals(
    const std::vector<std::pair<double, std::size_t>>& history, double window) {
  const double t_end = history.back().first;
  const double t_begin = t_end - window;
  std::uint64_t count = 0, bytes = 0;
  for (auto it = history.rbegin(); it != history.rend(); ++it) {
    if (it->first <= t_begin) break;
    ++count;
    bytes += it->second;
  }
  return {count, bytes};
}

}  // namespace

double MessageBus::topic_hz(const std::string& topic, double window) const {
  if (!(window > 0.0)) {
    throw_error(ErrorCategory::kValidation, "window must be positive");
  }
  const TopicState& state = topic_state(topic);
  if (state.history.empty()) {
    throw_error(ErrorCategory::kNoData, "no messages on topic " + topic);
  }
  const auto [count, bytes] = window_totals(state.history, window);
  (void)bytes;
  if (count == 0) {
    throw_error(ErrorCategory::kNoData, "no messages in window on topic " + topic);
  }
  return static_cast<double>(count) / window;
}

double MessageBus::topic_bw(const std::string& topic, double window) const {
  if (!(window > 0.0)) {
    throw_error(ErrorCategory::kValidation, "window must be positive");
  }
  const TopicState& state = topic_state(topic);
  if (state.history.empty()) {
    throw_error(ErrorCategory::kNoData, "no messages on topic " + topic);
  }
  const auto [count, bytes] = window_totals(state.history, window);
  if (count == 0) {
    throw_error(ErrorCategory::kNoData, "no messages in window on topic " + topic);
  }
  return static_cast<double>(bytes) / window;
}

std::string MessageBus::graph_export() const {
  nlohmann::ordered_json j;
  std::vector<std::string> nodes;
  auto add_node = [&nodes](const std::string& n) {
    if (std::find(nodes.begin(), nodes.end(), n) == nodes.end()) nodes.push_back(n);
  };

  nlohmann::ordered_json topics = nlohmann::ordered_json::array();
  nlohmann::ordered_json edges = nlohmann::ordered_json::array();
  for (const auto& [name, state] : topics_) {
    nlohmann::ordered_json t;
    t["name"] = name;
    t["kind"] = to_string(state.spec.kind);
    t["nominal_rate_hz"] = state.spec.nominal_rate;
    topics.push_back(t);
    for (const auto& pub : state.publisher_nodes) {
      add_node(pub);
      edges.push_back({{"from", pub}, {"to", name}});
    }
    for (int id : state.subscribers) {
      const auto& sub = subscriber_names_[static_cast<std::size_t>(id)].first;
      add_node(sub);
      edges.push_back({{"from", name}, {"to", sub}});
    }
  }
  std::sort(nodes.begin(), nodes.end());
  j["nodes"] = nodes;
  j["topics"] = topics;
  j["edges"] = edges;
  return j.dump(2);
}

std::string MessageBus::stats_csv(double window) const {
  std::string out = "topic,hz,bytes_per_s\n";
  char line[256];
  for (const auto& [name, state] : topics_) {
    if (state.history.empty()) continue;
    const auto [count, bytes] = window_totals(state.history, window);
    if (count == 0) continue;
    std::snprintf(line, sizeof(line), "%s,%.6g,%.6g\n", name.c_str(),
                  static_cast<double>(count) / window, static_cast<double>(bytes) / window);
    out += line;
  }
  return out;
}

std::vector<std::string> MessageBus::topic_names() const {
  std::vector<std::string> names;
  names.reserve(topics_.size());
  for (const auto& [name, state] : topics_) names.push_back(name);
  return names;
}

}  // namespace uavsim
