#include "pkeet/codec.hpp"

#include <cstring>

#include "pkeet/errors.hpp"

namespace pkeet {

namespace {

constexpr uint8_t kSensitiveFlag = 0x53;  // 'S'
constexpr uint64_t kMaxPayload = uint64_t(1) << 30;

class BitWriter {
 public:
  void put(uint64_t value, uint32_t bits) {
    for (uint32_t i = 0; i < bits; ++i) {
      if (bit_ == 0) bytes_.push_back(0);
      bytes_.back() |= static_cast<uint8_t>(((value >> i) & 1) << bit_);
      bit_ = (bit_ + 1) % 8;
    }
  }
  void put_coeffs(const std::vector<uint64_t>& c, uint32_t bits) {
    for (uint64_t v : c) put(v, bits);
  }
  std::vector<uint8_t> take() { return std::move(bytes_); }

 private:
  std::vector<uint8_t> bytes_;
  uint32_t bit_ = 0;
};

class BitReader {
 public:
  BitReader(const uint8_t* data, size_t len) : data_(data), len_(len) {}
  uint64_t get(uint32_t bits) {
    uint64_t v = 0;
    for (uint32_t i = 0; i < bits; ++i) {
      size_t byte = pos_ / 8;
      if (byte >= len_) throw CodecError("payload truncated");
      v |= uint64_t((data_[byte] >> (pos_ % 8)) & 1) << i;
      ++pos_;
    }
    return v;
  }

 private:
  const uint8_t* data_;
  size_t len_;
  size_t pos_ = 0;
};

void put_u16(std::vector<uint8_t>& out, uint16_t v) {
  out.push_back(uint8_t(v));
  out.push_back(uint8_t(v >> 8));
}
void put_u32(std::vector<uint8_t>& out, uint32_t v) {
  for (int i = 0; i < 4; ++i) out.push_back(uint8_t(v >> (8 * i)));
}
void put_u64(std::vector<uint8_t>& out, uint64_t v) {
  for (int i = 0; i < 8; ++i) out.push_back(uint8_t(v >> (8 * i)));
}

struct Cursor {
  const uint8_t* p;
  size_t left;
  uint64_t u16() { return read(2); }
  uint64_t u32() { return read(4); }
  uint64_t u64() { return read(8); }
  uint64_t read(size_t nbytes) {
    if (left < nbytes) throw CodecError("header truncated");
    uint64_t v = 0;
    for (size_t i = 0; i < nbytes; ++i) v |= uint64_t(p[i]) << (8 * i);
    p += nbytes;
    left -= nbytes;
    return v;
  }
};

class ObjectWriter {
 public:
  explicit ObjectWriter(const Params& p) : p_(p) {}

  void sensitive() { flag_ = true; }
  void raw_byte(uint8_t b) { prefix_.push_back(b); }
  void elem(const RingElem& e) { bits_.put_coeffs(e.c, p_.k); }
  void vec(const RingVec& v) {
    for (const RingElem& e : v) elem(e);
  }
  void ident(const IdentityVector& v) {
    for (uint64_t c : v) bits_.put(c, p_.k);
  }
  void small_poly(const IntPoly& poly) {
    for (int64_t c : poly) bits_.put(p_.ring->mod.from_signed(c), p_.k);
  }
  void small_vec(const IntVec& v) {
    for (const IntPoly& poly : v) small_poly(poly);
  }

  std::vector<uint8_t> finish(ObjectKind kind) {
    std::vector<uint8_t> payload;
    if (flag_) payload.push_back(kSensitiveFlag);
    payload.insert(payload.end(), prefix_.begin(), prefix_.end());
    std::vector<uint8_t> packed = bits_.take();
    payload.insert(payload.end(), packed.begin(), packed.end());

    FileHeader h;
    h.kind = kind;
    h.n = p_.n;
    h.q = p_.q;
    h.k = static_cast<uint16_t>(p_.k);
    h.m = static_cast<uint16_t>(p_.m);
    h.payload_len = payload.size();
    std::vector<uint8_t> out;
    out.reserve(FileHeader::kSize + payload.size());
    h.write(out);
    out.insert(out.end(), payload.begin(), payload.end());
    return out;
  }

 private:
  const Params& p_;
  bool flag_ = false;
  std::vector<uint8_t> prefix_;
  BitWriter bits_;
};

class ObjectReader {
 public:
  ObjectReader(const Params& p, const std::vector<uint8_t>& bytes, ObjectKind want)
      : p_(p), bytes_(bytes) {
    FileHeader h = FileHeader::parse(bytes);
    if (h.kind != want) throw CodecError("object kind mismatch");
    if (!h.matches(p)) throw CodecError("parameter fingerprint mismatch");
    if (bytes.size() != FileHeader::kSize + h.payload_len)
      throw CodecError("payload length mismatch");
    pos_ = FileHeader::kSize;
  }

  void sensitive() {
    if (pos_ >= bytes_.size() || bytes_[pos_] != kSensitiveFlag)
      throw CodecError("missing SENSITIVE flag");
    ++pos_;
  }
  uint8_t raw_byte() {
    if (pos_ >= bytes_.size()) throw CodecError("payload truncated");
    return bytes_[pos_++];
  }
  void begin_bits() {
    reader_.emplace(bytes_.data() + pos_, bytes_.size() - pos_);
  }
  RingElem elem() {
    RingElem e(p_.n);
    for (uint32_t j = 0; j < p_.n; ++j) e.c[j] = coeff();
    return e;
  }
  RingVec vec(size_t len) {
    RingVec v(len);
    for (auto& e : v) e = elem();
    return v;
  }
  IdentityVector ident() {
    IdentityVector v(p_.n);
    for (auto& c : v) c = coeff();
    return v;
  }
  IntPoly small_poly() {
    IntPoly poly(p_.n);
    for (auto& c : poly) c = p_.ring->mod.centered(coeff());
    return poly;
  }
  IntVec small_vec(size_t len) {
    IntVec v(len);
    for (auto& poly : v) poly = small_poly();
    return v;
  }

 private:
  uint64_t coeff() {
    uint64_t v = reader_->get(p_.k);
    if (v >= p_.q) throw CodecError("coefficient out of range");
    return v;
  }
  const Params& p_;
  const std::vector<uint8_t>& bytes_;
  size_t pos_ = 0;
  std::optional<BitReader> reader_;
};

}  // namespace

void FileHeader::write(std::vector<uint8_t>& out) const {
  out.insert(out.end(), kMagic, kMagic + 4);
  put_u16(out, version);
  out.push_back(static_cast<uint8_t>(kind));
  put_u32(out, n);
  put_u64(out, q);
  put_u16(out, k);
  put_u16(out, m);
  put_u64(out, payload_len);
}

FileHeader FileHeader::parse(const std::vector<uint8_t>& bytes) {
  if (bytes.size() < kSize) throw CodecError("file shorter than header");
  if (std::memcmp(bytes.data(), kMagic, 4) != 0) throw CodecError("bad magic");
  Cursor c{bytes.data() + 4, bytes.size() - 4};
  FileHeader h;
  h.version = static_cast<uint16_t>(c.u16());
  if (h.version != kVersion) throw CodecError("unsupported format version");
  uint8_t kind = static_cast<uint8_t>(c.read(1));
  if (kind < 1 || kind > 4) throw CodecError("unknown object kind");
  h.kind = static_cast<ObjectKind>(kind);
  h.n = static_cast<uint32_t>(c.u32());
  h.q = c.u64();
  h.k = static_cast<uint16_t>(c.u16());
  h.m = static_cast<uint16_t>(c.u16());
  h.payload_len = c.u64();
  if (h.payload_len > kMaxPayload) throw CodecError("payload length implausible");
  return h;
}

std::vector<uint8_t> encode_public_key(const Params& p, const PublicKey& pk) {
  ObjectWriter w(p);
  w.vec(pk.a);
  w.vec(pk.b);
  w.elem(pk.u);
  return w.finish(ObjectKind::PK);
}

PublicKey decode_public_key(const Params& p, const std::vector<uint8_t>& bytes) {
  ObjectReader r(p, bytes, ObjectKind::PK);
  r.begin_bits();
  PublicKey pk;
  pk.a = r.vec(p.m);
  pk.b = r.vec(p.m);
  pk.u = r.elem();
  return pk;
}

std::vector<uint8_t> encode_secret_key(const Params& p, const SecretKey& sk) {
  ObjectWriter w(p);
  w.sensitive();
  w.small_vec(sk.Ta.rows);
  w.small_vec(sk.Tb.rows);
  w.vec(sk.b);
  w.elem(sk.u);
  return w.finish(ObjectKind::SK);
}

SecretKey decode_secret_key(const Params& p, const std::vector<uint8_t>& bytes) {
  ObjectReader r(p, bytes, ObjectKind::SK);
  r.sensitive();
  r.begin_bits();
  size_t rows = 2 * size_t(p.k);
  IntVec ta = r.small_vec(rows);
  IntVec tb = r.small_vec(rows);
  SecretKey sk{make_trapdoor(p, std::move(ta), ring_zero(*p.ring), p.gauss.sigma),
               make_trapdoor(p, std::move(tb), ring_zero(*p.ring), p.gauss.sigma),
               r.vec(p.m), r.elem()};
  return sk;
}

std::vector<uint8_t> encode_ciphertext(const Params& p, const Ciphertext& ct) {
  ObjectWriter w(p);
  w.ident(ct.v);
  w.elem(ct.ct1);
  w.elem(ct.ct2);
  w.vec(ct.ct3);
  w.vec(ct.ct4);
  return w.finish(ObjectKind::CT);
}

Ciphertext decode_ciphertext(const Params& p, const std::vector<uint8_t>& bytes) {
  ObjectReader r(p, bytes, ObjectKind::CT);
  r.begin_bits();
  Ciphertext ct;
  ct.v = r.ident();
  ct.ct1 = r.elem();
  ct.ct2 = r.elem();
  ct.ct3 = r.vec(p.m);
  ct.ct4 = r.vec(p.m);
  return ct;
}

std::vector<uint8_t> encode_trapdoor(const Params& p, const AuthTrapdoor& td) {
  ObjectWriter w(p);
  w.sensitive();
  w.raw_byte(static_cast<uint8_t>(td.variant));
  if (td.variant == TdVariant::Type1 || td.variant == TdVariant::Type3j) {
    w.small_vec(td.tb->rows);
    w.vec(td.b);
    w.elem(td.u);
  } else {
    w.ident(td.bound_v);
    w.small_vec(td.preimage);
  }
  return w.finish(ObjectKind::TD);
}

AuthTrapdoor decode_trapdoor(const Params& p, const std::vector<uint8_t>& bytes) {
  ObjectReader r(p, bytes, ObjectKind::TD);
  r.sensitive();
  uint8_t variant = r.raw_byte();
  if (variant < 1 || variant > 4) throw CodecError("unknown trapdoor variant");
  r.begin_bits();
  AuthTrapdoor td;
  td.variant = static_cast<TdVariant>(variant);
  if (td.variant == TdVariant::Type1 || td.variant == TdVariant::Type3j) {
    td.tb = make_trapdoor(p, r.small_vec(2 * size_t(p.k)), ring_zero(*p.ring), p.gauss.sigma);
    td.b = r.vec(p.m);
    td.u = r.elem();
  } else {
    td.bound_v = r.ident();
    td.preimage = r.small_vec(p.m);
  }
  return td;
}

uint64_t ciphertext_payload_bits(const Params& p) {
  return uint64_t(p.n) * (2 * uint64_t(p.m) + 3) * p.k;
}

std::optional<Params> params_for_header(const FileHeader& h) {
  for (const char* name : {"paper62", "toy17"}) {
    Params p = Params::preset(name);
    if (h.matches(p)) return p;
  }
  return std::nullopt;
}

}  // namespace pkeet
