#pragma once

#include <cstdint>
#include <deque>
#include <map>
#include <string>
#include <variant>
#include <vector>

#include "uavsim/frames.hpp"
#include "uavsim/world.hpp"

namespace uavsim {

enum class PayloadKind {
  kLaserScan,
  kOdometry,
  kImu,
  kDepthImage,
  kPointCloud,
  kAttitudeCommand,
  kConfidenceMap,
  kEdgeImage,
};

const char* to_string(PayloadKind kind);

using Payload = std::variant<LaserScan, OdomSample, ImuSample, DepthImage, PointCloud,
                             AttitudeCommand, ConfidenceMap, EdgeImage>;

PayloadKind payload_kind(const Payload& payload);

struct TopicSpec {
  std::string name;
  PayloadKind kind = PayloadKind::kLaserScan;
  double nominal_rate = 1.0;        // Hz
  double nominal_bandwidth = 0.0;   // bytes/s
};

struct MessageEnvelope {
  std::string topic;
  std::uint64_t seq = 0;
  double stamp = 0.0;
  std::size_t payload_size = 0;
  Payload payload;
};

struct BusOptions {
  // 0 keeps queues unbounded; otherwise the oldest envelope is dropped when
  // a subscriber queue exceeds the bound.
  std::size_t max_queue = 0;
};

// Typed publish/subscribe bus with per-topic rate and bandwidth accounting.
// Owned and advanced by a single scheduler; no concurrent access contract.
class MessageBus {
 public:
  explicit MessageBus(BusOptions options = {}) : options_(options) {}

  void register_topic(const TopicSpec& spec);
  bool has_topic(const std::string& topic) const { return topics_.count(topic) > 0; }
  const TopicSpec& topic_spec(const std::string& topic) const;

  // Declares `node` as a publisher on `topic` (graph bookkeeping only).
  void register_publisher(const std::string& node, const std::string& topic);

  // Subscribes `node` to `topic`; the returned id indexes the queue.
  int subscribe(const std::string& node, const std::string& topic);

  // Publishes one envelope; seq is assigned per topic. Delivery appends to
  // every subscriber queue in subscriber-registration order.
  void publish(const std::string& topic, double stamp, std::size_t payload_size,
               Payload payload);

  std::deque<MessageEnvelope>& queue(int subscriber_id);
  const std::deque<MessageEnvelope>& queue(int subscriber_id) const;

  // Messages observed on the topic during the trailing `window` seconds
  // (anchored at the topic's latest stamp) divided by the window.
  double topic_hz(const std::string& topic, double window) const;

  // Payload bytes over the same trailing window divided by the window.
  double topic_bw(const std::string& topic, double window) const;

  std::uint64_t published_count(const std::string& topic) const;

  // Publisher -> topic -> subscriber adjacency as JSON with stable ordering.
  std::string graph_export() const;

  // CSV: topic, hz, bytes/s (one row per topic with traffic in the window).
  std::string stats_csv(double window) const;

  std::vector<std::string> topic_names() const;

 private:
  struct TopicState {
    TopicSpec spec;
    std::uint64_t next_seq = 0;
    double last_stamp = -std::numeric_limits<double>::infinity();
    std::vector<std::pair<double, std::size_t>> history;  // (stamp, payload_size)
    std::vector<int> subscribers;                         // registration order
    std::vector<std::string> publisher_nodes;
  };

  const TopicState& topic_state(const std::string& topic) const;

  BusOptions options_;
  std::map<std::string, TopicState> topics_;
  std::vector<std::deque<MessageEnvelope>> queues_;
  std::vector<std::pair<std::string, std::string>> subscriber_names_;  // (node, topic)
};

// Fixed payload sizes per kind, back-derived from the reported per-topic
// rate/bandwidth pairs (1 KB = 1024 B; the scan figure is kilobits/s).
std::size_t payload_bytes(PayloadKind kind);

}  // namespace uavsim
