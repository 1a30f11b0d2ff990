#include "cli/cache.hpp"

#include <cmath>
#include <cstdio>
#include <cstring>
#include <filesystem>
#include <fstream>
#include <iterator>
#include <sstream>

#include <json.hpp>
#include <openssl/evp.h>

#include "brlab/error.hpp"

namespace brlab::cli {

namespace fs = std::filesystem;

namespace {

constexpr const char* kMagic = "BRLAB-CACHE";

std::string hexfloat(double v) {
  char buf[64];
  std::snprintf(buf, sizeof buf, "%a", v);
  return buf;
}

class Writer {
 public:
  void u32(std::uint32_t v) { raw(&v, sizeof v); }
  void i32(std::int32_t v) { raw(&v, sizeof v); }
  void f64(double v) { raw(&v, sizeof v); }
  void str(const std::string& s) {
    u32(static_cast<std::uint32_t>(s.size()));
    out_.append(s);
  }
  void vec(const std::vector<double>& v) {
    u32(static_cast<std::uint32_t>(v.size()));
    if (!v.empty()) raw(v.data(), v.size() * sizeof(double));
  }
  const std::string& data() const { return out_; }

 private:
  void raw(const void* p, std::size_t n) { out_.append(static_cast<const char*>(p), n); }
  std::string out_;
};

class Reader {
 public:
  explicit Reader(const std::string& s) : s_(s) {}
  std::uint32_t u32() { return get<std::uint32_t>(); }
  std::int32_t i32() { return get<std::int32_t>(); }
  double f64() { return get<double>(); }
  std::string str() {
    const std::size_t n = u32();
    need(n);
    std::string out = s_.substr(pos_, n);
    pos_ += n;
    return out;
  }
  std::vector<double> vec() {
    const std::size_t n = u32();
    need(n * sizeof(double));
    std::vector<double> v(n);
    if (n) std::memcpy(v.data(), s_.data() + pos_, n * sizeof(double));
    pos_ += n * sizeof(double);
    return v;
  }
  bool done() const { return pos_ == s_.size(); }

 private:
  template <class T>
  T get() {
    need(sizeof(T));
    T v;
    std::memcpy(&v, s_.data() + pos_, sizeof(T));
    pos_ += sizeof(T);
    return v;
  }
  void need(std::size_t n) const {
    if (pos_ + n > s_.size()) throw Error("cache payload truncated");
  }
  const std::string& s_;
  std::size_t pos_ = 0;
};

std::string psi_descriptor(PsiConvention conv) {
  const BumpSpec h = psi_hat_spec();
  const SchwartzProfile::Options o;
  std::ostringstream os;
  os << "psi|" << to_string(conv) << '|' << hexfloat(h.a) << ',' << hexfloat(h.b) << ',' << hexfloat(h.c) << ','
     << hexfloat(h.e) << ',' << hexfloat(h.sharpness) << '|' << hexfloat(o.s_max) << ',' << hexfloat(o.panel_width)
     << ',' << o.degree;
  return os.str();
}

std::string encode(const FamilyMember::Snapshot& s) {
  Writer w;
  w.u32(s.envelope ? 1 : 0);
  if (s.envelope) {
    const auto d = s.envelope->data();
    w.i32(d.opt.degree);
    w.f64(d.opt.abs_tol);
    w.i32(d.opt.max_depth);
    w.vec(d.edges);
    std::vector<double> c;
    c.reserve(2 * d.coef.size());
    for (const auto& z : d.coef) {
      c.push_back(z.real());
      c.push_back(z.imag());
    }
    w.vec(c);
    w.f64(d.max_err);
  }
  w.u32(static_cast<std::uint32_t>(s.norms.size()));
  for (const auto& [k, v] : s.norms) {
    w.str(k);
    w.f64(v);
  }
  w.u32(s.peak ? 1 : 0);
  if (s.peak) {
    w.f64(s.peak->x);
    w.f64(s.peak->value);
  }
  return w.data();
}

FamilyMember::Snapshot decode(const std::string& payload) {
  Reader r(payload);
  FamilyMember::Snapshot s;
  if (r.u32()) {
    ChebyshevTable::Data d;
    d.opt.degree = r.i32();
    d.opt.abs_tol = r.f64();
    d.opt.max_depth = r.i32();
    d.edges = r.vec();
    const auto c = r.vec();
    if (c.size() % 2) throw Error("cache payload has an odd coefficient count");
    for (std::size_t i = 0; i < c.size(); i += 2) d.coef.emplace_back(c[i], c[i + 1]);
    d.max_err = r.f64();
    s.envelope = ChebyshevTable::from_data(std::move(d));
  }
  const std::uint32_t n = r.u32();
  for (std::uint32_t i = 0; i < n; ++i) {
    std::string k = r.str();
    s.norms[k] = r.f64();
  }
  if (r.u32()) {
    FamilyMember::Peak p;
    p.x = r.f64();
    p.value = r.f64();
    s.peak = p;
  }
  if (!r.done()) throw Error("cache payload has trailing bytes");
  return s;
}

double rel(double a, double b) {
  if (a == b) return 0;
  return std::abs(a - b) / std::max(std::abs(a), std::abs(b));
}

}  // namespace

std::string sha256_hex(const std::string& data) {
  unsigned char md[EVP_MAX_MD_SIZE];
  unsigned int len = 0;
  if (!EVP_Digest(data.data(), data.size(), md, &len, EVP_sha256(), nullptr)) throw Error("SHA-256 failed");
  static const char* hex = "0123456789abcdef";
  std::string out;
  for (unsigned i = 0; i < len; ++i) {
    out.push_back(hex[md[i] >> 4]);
    out.push_back(hex[md[i] & 15]);
  }
  return out;
}

ProfileCache::ProfileCache(std::string dir, bool enabled, std::ostream& log)
    : dir_(std::move(dir)), enabled_(enabled), log_(log) {
  if (enabled_) fs::create_directories(dir_);
}

std::string ProfileCache::path_for(const std::string& key) const { return (fs::path(dir_) / (key + ".bin")).string(); }

std::string ProfileCache::psi_key(const SchwartzProfile& p) {
  return sha256_hex("v" + std::to_string(kCacheFormat) + "|" + p.fingerprint());
}

std::string ProfileCache::member_key(const FamilyMember& m) {
  const auto& o = m.options();
  std::ostringstream os;
  // f_eps and its tables depend on psi, d, gamma and eps only; norms are keyed by p inside
  os << "v" << kCacheFormat << "|member|" << m.psi().fingerprint() << "|d=" << m.dim()
     << "|gamma=" << hexfloat(m.params().gamma()) << "|eps=" << hexfloat(m.epsilon())
     << "|annulus=" << hexfloat(o.annulus_inner) << ',' << hexfloat(o.annulus_outer)
     << "|lp_rel=" << hexfloat(o.lp_rel_tol) << "|hankel=" << hexfloat(o.hankel.rel_tol)
     << "|osc=" << hexfloat(o.oscillatory.rel_tol);
  return sha256_hex(os.str());
}

bool ProfileCache::read_entry(const std::string& key, const std::string& kind, std::string& payload, bool quiet) {
  const std::string path = path_for(key);
  std::ifstream in(path, std::ios::binary);
  if (!in) return false;
  std::string magic, k_kind, k_key, k_hash, k_bytes, v_kind, v_key, v_hash;
  int format = 0;
  std::size_t bytes = 0;
  in >> magic >> format >> k_kind >> v_kind >> k_key >> v_key >> k_hash >> v_hash >> k_bytes >> bytes;
  bool ok = in && magic == kMagic && format == kCacheFormat && k_kind == "kind" && v_kind == kind && k_key == "key" &&
            v_key == key && k_hash == "payload-sha256" && k_bytes == "bytes";
  if (ok) {
    in.get();  // newline after the header
    payload.assign(bytes, '\0');
    in.read(payload.data(), static_cast<std::streamsize>(bytes));
    ok = static_cast<std::size_t>(in.gcount()) == bytes && in.peek() == std::char_traits<char>::eof() &&
         sha256_hex(payload) == v_hash;
  }
  if (!ok && quiet) payload.clear();
  if (!ok && !quiet) {
    std::lock_guard<std::mutex> lock(mu_);
    ++stats_.rebuilt;
    log_ << "warning: cache entry " << path << " failed the header check; rebuilding\n";
    payload.clear();
  }
  return ok;
}

void ProfileCache::write_entry(const std::string& key, const std::string& kind, const std::string& label,
                               const std::string& payload) {
  const std::string path = path_for(key), tmp = path + ".tmp";
  {
    std::ofstream out(tmp, std::ios::binary | std::ios::trunc);
    if (!out) throw Error("cannot write cache entry " + tmp);
    out << kMagic << ' ' << kCacheFormat << "\nkind " << kind << "\nkey " << key << "\npayload-sha256 "
        << sha256_hex(payload) << "\nbytes " << payload.size() << '\n';
    out.write(payload.data(), static_cast<std::streamsize>(payload.size()));
  }
  fs::rename(tmp, path);
  std::lock_guard<std::mutex> lock(mu_);
  ++stats_.stored;
  touched_[key] = {kind, label, fs::path(path).filename().string()};
}

void ProfileCache::note(const std::string& key, const std::string& kind, const std::string& label) {
  std::lock_guard<std::mutex> lock(mu_);
  touched_.emplace(key, Entry{kind, label, key + ".bin"});
}

void ProfileCache::compare(double a, double b) {
  std::lock_guard<std::mutex> lock(mu_);
  ++stats_.compared;
  stats_.max_rel_diff = std::max(stats_.max_rel_diff, rel(a, b));
}

std::shared_ptr<const SchwartzProfile> ProfileCache::psi(PsiConvention conv) {
  const int slot = static_cast<int>(conv);
  {
    std::lock_guard<std::mutex> lock(mu_);
    if (auto it = psi_.find(slot); it != psi_.end()) return it->second;
  }
  const std::string key = sha256_hex("v" + std::to_string(kCacheFormat) + "|" + psi_descriptor(conv));
  const std::string label = std::string("psi ") + to_string(conv);
  std::shared_ptr<const SchwartzProfile> out;
  std::string payload;
  const bool have = read_entry(key, "psi", payload);
  if (enabled_ && have) {
    try {
      Reader r(payload);
      const std::string fp = r.str();
      auto table = r.vec();
      const double tail = r.f64(), err = r.f64();
      auto p = std::make_shared<const SchwartzProfile>(
          SchwartzProfile::from_table(conv, psi_hat_spec(), {}, std::move(table), tail, err));
      if (p->fingerprint() != fp) throw Error("fingerprint mismatch");
      out = p;
      std::lock_guard<std::mutex> lock(mu_);
      ++stats_.hits;
    } catch (const Error& e) {
      log_ << "warning: cache entry for " << label << " unreadable (" << e.what() << "); rebuilding\n";
      std::lock_guard<std::mutex> lock(mu_);
      ++stats_.rebuilt;
    }
  }
  if (!out) {
    auto p = std::make_shared<const SchwartzProfile>(conv);
    {
      std::lock_guard<std::mutex> lock(mu_);
      ++stats_.misses;
    }
    if (enabled_) {
      Writer w;
      w.str(p->fingerprint());
      w.vec(p->table());
      w.f64(p->tail_bound());
      w.f64(p->interpolation_error());
      write_entry(key, "psi", label, w.data());
    } else if (have) {
      Reader r(payload);
      r.str();
      const auto cached = r.vec();
      const auto& fresh = p->table();
      if (cached.size() == fresh.size()) {
        double scale = 0, diff = 0;
        for (std::size_t i = 0; i < fresh.size(); ++i) {
          scale = std::max(scale, std::abs(fresh[i]));
          diff = std::max(diff, std::abs(fresh[i] - cached[i]));
        }
        compare(0, scale > 0 ? diff / scale : 0);
      } else {
        compare(0, 1);
      }
    }
    out = p;
  }
  note(key, "psi", label);
  std::lock_guard<std::mutex> lock(mu_);
  return psi_.emplace(slot, out).first->second;
}

FamilyMember ProfileCache::member(const Params& params, std::shared_ptr<const SchwartzProfile> psi) {
  FamilyMember m(params, std::move(psi));
  if (!enabled_) return m;
  const std::string key = member_key(m);
  std::string payload;
  if (read_entry(key, "member", payload)) {
    try {
      m.seed(decode(payload));
      std::lock_guard<std::mutex> lock(mu_);
      ++stats_.hits;
      return m;
    } catch (const Error& e) {
      log_ << "warning: cache entry " << path_for(key) << " unreadable (" << e.what() << "); rebuilding\n";
      std::lock_guard<std::mutex> lock(mu_);
      ++stats_.rebuilt;
    }
  }
  std::lock_guard<std::mutex> lock(mu_);
  ++stats_.misses;
  return m;
}

void ProfileCache::store(const FamilyMember& m) {
  const std::string key = member_key(m);
  std::ostringstream label;
  label << "member d=" << m.dim() << " gamma=" << m.params().gamma() << " eps=2^" << std::log2(m.epsilon());
  auto snap = m.snapshot();
  std::string payload;
  // a rejected entry was already reported when the member was created
  const bool have = read_entry(key, "member", payload, true);
  if (!enabled_) {
    if (!have) return;
    try {
      const auto cached = decode(payload);
      for (const auto& [k, v] : snap.norms)
        if (auto it = cached.norms.find(k); it != cached.norms.end()) compare(v, it->second);
      if (snap.peak && cached.peak) compare(snap.peak->value, cached.peak->value);
      if (snap.envelope && cached.envelope) {
        const auto a = snap.envelope->data(), b = cached.envelope->data();
        if (a.coef.size() != b.coef.size()) {
          compare(0, 1);
        } else {
          double scale = 0, diff = 0;
          for (std::size_t i = 0; i < a.coef.size(); ++i) {
            scale = std::max(scale, std::abs(a.coef[i]));
            diff = std::max(diff, std::abs(a.coef[i] - b.coef[i]));
          }
          compare(0, scale > 0 ? diff / scale : 0);
        }
      }
    } catch (const Error&) {
    }
    return;
  }
  if (have) {
    try {
      const auto cached = decode(payload);
      for (const auto& [k, v] : cached.norms) snap.norms.emplace(k, v);
      if (!snap.peak) snap.peak = cached.peak;
      if (!snap.envelope) snap.envelope = cached.envelope;
    } catch (const Error&) {
    }
  }
  write_entry(key, "member", label.str(), encode(snap));
}

void ProfileCache::write_manifest() const {
  if (!enabled_) return;
  const fs::path path = fs::path(dir_) / "manifest.json";
  std::map<std::string, nlohmann::json> merged;
  // entries of earlier runs stay listed while their files exist
  if (std::ifstream in(path); in) {
    try {
      const auto old = nlohmann::json::parse(in);
      if (old.value("format", 0) == kCacheFormat)
        for (const auto& e : old.at("entries"))
          if (fs::exists(fs::path(dir_) / e.at("file").get<std::string>())) merged[e.at("key")] = e;
    } catch (const nlohmann::json::exception&) {
      log_ << "warning: " << path.string() << " unreadable; rewriting\n";
    }
  }
  std::lock_guard<std::mutex> lock(mu_);
  for (const auto& [key, e] : touched_)
    merged[key] = {{"key", key}, {"kind", e.kind}, {"label", e.label}, {"file", e.file}};
  nlohmann::json entries = nlohmann::json::array();
  for (auto& [key, e] : merged) entries.push_back(std::move(e));
  const nlohmann::json j = {{"format", kCacheFormat}, {"entries", entries}};
  std::ofstream(path) << j.dump(2) << '\n';
}

}  // namespace brlab::cli
