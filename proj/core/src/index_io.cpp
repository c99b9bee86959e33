#include <zlib.h>

#include <cstring>
#include <fstream>

#include "prf/errors.hpp"
#include "prf/hash.hpp"
#include "prf/index.hpp"

// On-disk layout (all integers little-endian):
//   magic "PRFINDEX" | u32 version | analyzer block | u64 n_docs |
//   u64 total_tokens | doc table | vocabulary with postings | u32 crc32
// The CRC covers every byte before it. Forward records and per-term
// statistics are reconstructed from the postings on load.

namespace prf {

namespace {

constexpr char magic[8] = {'P', 'R', 'F', 'I', 'N', 'D', 'E', 'X'};
constexpr uint32_t format_version = 1;

class writer {
public:
    void u8(uint8_t v) { buf_.push_back(static_cast<char>(v)); }
    void u32(uint32_t v) {
        for (int i = 0; i < 4; ++i) buf_.push_back(static_cast<char>((v >> (8 * i)) & 0xff));
    }
    void u64(uint64_t v) {
        for (int i = 0; i < 8; ++i) buf_.push_back(static_cast<char>((v >> (8 * i)) & 0xff));
    }
    void str(std::string_view s) {
        u32(static_cast<uint32_t>(s.size()));
        buf_.append(s);
    }
    void raw(const void* p, size_t n) { buf_.append(static_cast<const char*>(p), n); }
    const std::string& bytes() const { return buf_; }

private:
    std::string buf_;
};

class reader {
public:
    explicit reader(std::string data) : data_(std::move(data)) {}

    uint8_t u8() { return static_cast<uint8_t>(take(1)[0]); }
    uint32_t u32() {
        const char* p = take(4);
        uint32_t v = 0;
        for (int i = 3; i >= 0; --i) v = (v << 8) | static_cast<unsigned char>(p[i]);
        return v;
    }
    uint64_t u64() {
        const char* p = take(8);
        uint64_t v = 0;
        for (int i = 7; i >= 0; --i) v = (v << 8) | static_cast<unsigned char>(p[i]);
        return v;
    }
    std::string str() {
        uint32_t n = u32();
        return std::string(take(n), n);
    }
    size_t remaining() const { return data_.size() - pos_; }
    const std::string& data() const { return data_; }
    size_t pos() const { return pos_; }

private:
    const char* take(size_t n) {
        if (pos_ + n > data_.size())
            throw index_io_error(index_io_error::cause::corrupt, "index file truncated");
        const char* p = data_.data() + pos_;
        pos_ += n;
        return p;
    }
    std::string data_;
    size_t pos_ = 0;
};

uint32_t crc_of(std::string_view bytes) {
    return static_cast<uint32_t>(
        crc32(0L, reinterpret_cast<const Bytef*>(bytes.data()), static_cast<uInt>(bytes.size())));
}

} // namespace

void save_index(const inverted_index& ix, const std::filesystem::path& path) {
    writer w;
    w.raw(magic, sizeof(magic));
    w.u32(format_version);

    const analyzer_config& a = ix.analyzer();
    w.u64(a.fingerprint());
    w.u8(a.lowercase ? 1 : 0);
    w.u8(static_cast<uint8_t>(a.stemmer));
    w.u32(static_cast<uint32_t>(a.stopwords.size()));
    for (const auto& s : a.stopwords) w.str(s);

    w.u64(ix.n_docs());
    w.u64(ix.total_tokens());
    for (const doc_record& d : ix.docs()) {
        w.str(d.doc_id);
        w.u64(d.length);
    }
    w.u64(ix.vocab_size());
    for (uint32_t t = 0; t < ix.vocab_size(); ++t) {
        w.str(ix.term(t));
        const auto& plist = ix.postings(t);
        w.u32(static_cast<uint32_t>(plist.size()));
        for (const posting& p : plist) {
            w.u32(p.doc);
            w.u32(p.tf);
        }
    }

    uint32_t crc = crc_of(w.bytes());
    w.u32(crc);

    std::ofstream out(path, std::ios::binary | std::ios::trunc);
    if (!out) throw index_io_error(index_io_error::cause::write_failed,
                                   "cannot open for writing: " + path.string());
    out.write(w.bytes().data(), static_cast<std::streamsize>(w.bytes().size()));
    out.flush();
    if (!out) throw index_io_error(index_io_error::cause::write_failed,
                                   "write failed: " + path.string());
}

inverted_index load_index(const std::filesystem::path& path) {
    std::ifstream in(path, std::ios::binary);
    if (!in)
        throw index_io_error(index_io_error::cause::not_found,
                             "index file not found: " + path.string());
    std::string data((std::istreambuf_iterator<char>(in)), std::istreambuf_iterator<char>());

    if (data.size() < sizeof(magic) + 8 ||
        std::memcmp(data.data(), magic, sizeof(magic)) != 0)
        throw index_io_error(index_io_error::cause::bad_magic,
                             "not a prf index file: " + path.string());

    uint32_t stored_crc = 0;
    for (int i = 3; i >= 0; --i)
        stored_crc = (stored_crc << 8) | static_cast<unsigned char>(data[data.size() - 4 + i]);
    if (crc_of(std::string_view(data.data(), data.size() - 4)) != stored_crc)
        throw index_io_error(index_io_error::cause::checksum_mismatch,
                             "index checksum mismatch: " + path.string());

    size_t payload_end = data.size() - 4;
    reader r(std::move(data));
    for (size_t i = 0; i < sizeof(magic); ++i) r.u8();

    uint32_t version = r.u32();
    if (version != format_version)
        throw index_io_error(index_io_error::cause::version_mismatch,
                             "index format version " + std::to_string(version) +
                                 ", expected " + std::to_string(format_version));

    inverted_index ix;
    uint64_t stored_analyzer_fp = r.u64();
    ix.analyzer_.lowercase = r.u8() != 0;
    ix.analyzer_.stemmer = static_cast<stemmer_kind>(r.u8());
    uint32_t n_stop = r.u32();
    for (uint32_t i = 0; i < n_stop; ++i) ix.analyzer_.stopwords.insert(r.str());
    if (ix.analyzer_.fingerprint() != stored_analyzer_fp)
        throw index_io_error(index_io_error::cause::corrupt,
                             "stored analyzer block does not match its fingerprint");

    uint64_t n_docs = r.u64();
    uint64_t stored_total_tokens = r.u64();
    ix.docs_.resize(n_docs);
    for (uint64_t d = 0; d < n_docs; ++d) {
        ix.docs_[d].doc_id = r.str();
        ix.docs_[d].length = r.u64();
    }

    uint64_t n_terms = r.u64();
    ix.terms_.reserve(n_terms);
    ix.postings_.resize(n_terms);
    std::vector<uint64_t> forward_lengths(n_docs, 0);
    for (uint64_t t = 0; t < n_terms; ++t) {
        ix.terms_.push_back(r.str());
        uint32_t df = r.u32();
        auto& plist = ix.postings_[t];
        plist.resize(df);
        uint32_t prev_doc = 0;
        for (uint32_t p = 0; p < df; ++p) {
            plist[p].doc = r.u32();
            plist[p].tf = r.u32();
            if (plist[p].doc >= n_docs || plist[p].tf == 0 ||
                (p > 0 && plist[p].doc <= prev_doc))
                throw index_io_error(index_io_error::cause::corrupt,
                                     "malformed posting list for term " + ix.terms_.back());
            prev_doc = plist[p].doc;
            ix.docs_[plist[p].doc].term_freqs.emplace_back(static_cast<uint32_t>(t),
                                                           plist[p].tf);
            forward_lengths[plist[p].doc] += plist[p].tf;
        }
    }
    if (r.pos() != payload_end)
        throw index_io_error(index_io_error::cause::corrupt, "trailing bytes in index file");

    // forward records were appended in ascending term order, so they are
    // already sorted; cross-check the stored lengths
    uint64_t total = 0;
    for (uint64_t d = 0; d < n_docs; ++d) {
        if (forward_lengths[d] != ix.docs_[d].length)
            throw index_io_error(index_io_error::cause::corrupt,
                                 "document length mismatch for " + ix.docs_[d].doc_id);
        total += forward_lengths[d];
    }
    if (total != stored_total_tokens)
        throw index_io_error(index_io_error::cause::corrupt, "token total mismatch");

    ix.finalize();
    return ix;
}

} // namespace prf
