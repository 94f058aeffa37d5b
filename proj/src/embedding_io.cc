/*
 * Copyright 2026 The lilens Authors.
 *
 * Licensed under the Apache License, Version 2.0 (the "License");
 * you may not use this file except in compliance with the License.
 * You may obtain a copy of the License at
 *
 *     https://www.apache.org/licenses/LICENSE-2.0
 *
 * Unless required by applicable law or agreed to in writing, software
 * distributed under the License is distributed on an "AS IS" BASIS,
 * WITHOUT WARRANTIES OR CONDITIONS OF ANY KIND, either express or implied.
 * See the License for the specific language governing permissions and
 * limitations under the License.
 */

#include "lilens/embedding_io.h"

#include <bit>
#include <cstring>
#include <fstream>
#include <istream>
#include <ostream>

#include "lilens/errors.h"

namespace lilens {
namespace {

static_assert(std::endian::native == std::endian::little,
              "LIEB I/O assumes a little-endian host");

class Reader {
 public:
  explicit Reader(std::istream& in) : in_(in) {}

  void Bytes(void* dst, size_t n) {
    in_.read(static_cast<char*>(dst), static_cast<std::streamsize>(n));
    if (static_cast<size_t>(in_.gcount()) != n) {
      throw InputError("truncated LIEB file");
    }
  }
  template <typename T>
  T Scalar() {
    T value;
    Bytes(&value, sizeof(T));
    return value;
  }
  std::string String(size_t n) {
    std::string s(n, '\0');
    Bytes(s.data(), n);
    return s;
  }

 private:
  std::istream& in_;
};

class Writer {
 public:
  explicit Writer(std::ostream& out) : out_(out) {}

  void Bytes(const void* src, size_t n) {
    out_.write(static_cast<const char*>(src), static_cast<std::streamsize>(n));
  }
  template <typename T>
  void Scalar(T value) {
    Bytes(&value, sizeof(T));
  }
  void String16(const std::string& s, const char* what) {
    if (s.size() > UINT16_MAX) {
      throw InputError(std::string(what) + " longer than 65535 bytes");
    }
    Scalar<uint16_t>(static_cast<uint16_t>(s.size()));
    Bytes(s.data(), s.size());
  }

 private:
  std::ostream& out_;
};

}  // namespace

EmbeddingStore ReadEmbeddings(std::istream& in, const LoadOptions& options) {
  Reader r(in);
  char magic[4];
  r.Bytes(magic, 4);
  if (std::memcmp(magic, kLiebMagic, 4) != 0) throw InputError("bad magic");
  const auto version = r.Scalar<uint16_t>();
  if (version != kLiebVersion) {
    throw InputError("unsupported LIEB version " + std::to_string(version));
  }
  r.Scalar<uint16_t>();  // flags
  const auto dim = r.Scalar<uint32_t>();
  if (dim == 0) throw InputError("LIEB header declares dim 0");
  const auto seq_count = r.Scalar<uint64_t>();

  std::vector<EmbeddingSequence> sequences;
  for (uint64_t s = 0; s < seq_count; ++s) {
    std::string id = r.String(r.Scalar<uint16_t>());
    const auto n_tokens = r.Scalar<uint32_t>();
    if (n_tokens == 0) throw InputError("sequence '" + id + "' has no tokens");
    if (n_tokens > options.max_tokens) {
      throw InputError("sequence '" + id + "' has " +
                       std::to_string(n_tokens) + " tokens, cap is " +
                       std::to_string(options.max_tokens));
    }
    std::vector<Token> tokens(n_tokens);
    for (auto& tok : tokens) {
      tok.text = r.String(r.Scalar<uint16_t>());
      tok.word_index = r.Scalar<uint32_t>();
    }
    std::vector<float> matrix(static_cast<size_t>(n_tokens) * dim);
    r.Bytes(matrix.data(), matrix.size() * sizeof(float));
    sequences.emplace_back(std::move(id), std::move(tokens),
                           std::move(matrix), dim);
  }
  if (in.peek() != std::char_traits<char>::eof()) {
    throw InputError("trailing bytes after last LIEB sequence");
  }
  return EmbeddingStore(dim, std::move(sequences));
}

EmbeddingStore LoadEmbeddings(const std::string& path,
                              const LoadOptions& options) {
  std::ifstream in(path, std::ios::binary);
  if (!in) throw InputError("cannot open embedding file " + path);
  try {
    return ReadEmbeddings(in, options);
  } catch (const InputError& e) {
    throw InputError(path + ": " + e.what());
  }
}

void WriteEmbeddings(const EmbeddingStore& store, std::ostream& out,
                     uint16_t flags) {
  Writer w(out);
  w.Bytes(kLiebMagic, 4);
  w.Scalar<uint16_t>(kLiebVersion);
  w.Scalar<uint16_t>(flags);
  w.Scalar<uint32_t>(static_cast<uint32_t>(store.dim()));
  w.Scalar<uint64_t>(store.size());
  for (const auto& seq : store.sequences()) {
    w.String16(seq.id(), "sequence id");
    w.Scalar<uint32_t>(static_cast<uint32_t>(seq.size()));
    for (const auto& tok : seq.tokens()) {
      w.String16(tok.text, "token");
      w.Scalar<uint32_t>(tok.word_index);
    }
    w.Bytes(seq.matrix().data(), seq.matrix().size_bytes());
  }
}

void WriteEmbeddings(const EmbeddingStore& store, const std::string& path,
                     uint16_t flags) {
  std::ofstream out(path, std::ios::binary);
  if (!out) throw InputError("cannot open " + path + " for writing");
  WriteEmbeddings(store, out, flags);
  if (!out) throw InputError("write failed: " + path);
}

}  // namespace lilens
