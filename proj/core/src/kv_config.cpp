#include "freight/kv_config.hpp"

#include <sstream>

#include "csv.hpp"
#include "freight/error.hpp"

namespace freight {

KeyValueConfig KeyValueConfig::parse(std::string_view text, std::string source) {
  KeyValueConfig cfg;
  cfg.source_ = std::move(source);
  std::istringstream in{std::string(text)};
  std::string line;
  std::size_t line_no = 0;
  while (std::getline(in, line)) {
    ++line_no;
    std::string_view view(line);
    if (const auto hash = view.find('#'); hash != std::string_view::npos) view = view.substr(0, hash);
    view = detail::trim(view);
    if (view.empty()) continue;
    const auto eq = view.find('=');
    if (eq == std::string_view::npos) {
      throw Error(ErrorCode::Config, cfg.source_ + ":" + std::to_string(line_no) + ": expected 'key = value'");
    }
    const auto key = detail::trim(view.substr(0, eq));
    if (key.empty()) {
      throw Error(ErrorCode::Config, cfg.source_ + ":" + std::to_string(line_no) + ": empty key");
    }
    cfg.entries_[std::string(key)] = std::string(detail::trim(view.substr(eq + 1)));
  }
  return cfg;
}

KeyValueConfig KeyValueConfig::load(const std::filesystem::path& path) {
  auto cfg = parse(detail::read_file(path), path.string());
  cfg.base_dir_ = path.parent_path();
  return cfg;
}

bool KeyValueConfig::has(std::string_view key) const { return entries_.find(key) != entries_.end(); }

void KeyValueConfig::set(std::string key, std::string value) { entries_[std::move(key)] = std::move(value); }

std::optional<std::string> KeyValueConfig::get(std::string_view key) const {
  const auto it = entries_.find(key);
  if (it == entries_.end()) return std::nullopt;
  return it->second;
}

std::string KeyValueConfig::get_string(std::string_view key, std::string_view fallback) const {
  const auto v = get(key);
  return v ? *v : std::string(fallback);
}

namespace {
std::string label(const std::string& source, std::string_view key) { return source + ": " + std::string(key); }
}  // namespace

double KeyValueConfig::get_double(std::string_view key, double fallback) const {
  const auto v = get(key);
  return v ? detail::parse_double(*v, label(source_, key)) : fallback;
}

std::int64_t KeyValueConfig::get_int(std::string_view key, std::int64_t fallback) const {
  const auto v = get(key);
  return v ? detail::parse_int(*v, label(source_, key)) : fallback;
}

std::uint64_t KeyValueConfig::get_uint64(std::string_view key, std::uint64_t fallback) const {
  const auto v = get(key);
  return v ? detail::parse_uint64(*v, label(source_, key)) : fallback;
}

bool KeyValueConfig::get_bool(std::string_view key, bool fallback) const {
  const auto v = get(key);
  return v ? detail::parse_bool(*v, label(source_, key)) : fallback;
}

}  // namespace freight
