#ifndef SRLP_LSTM_HPP
#define SRLP_LSTM_HPP

#include <span>
#include <string>
#include <utility>
#include <vector>

#include "srlp/optim.hpp"
#include "srlp/tape.hpp"

namespace srlp {

// Tape-bound weights for one direction of one layer: gate weights W*,
// recurrent weights U*, biases b* for gates i, f, o, g.
struct LSTMCellVars {
  VarId W_i, W_f, W_o, W_g;
  VarId U_i, U_f, U_o, U_g;
  VarId b_i, b_f, b_o, b_g;
};

// Naming/shape scheme for a deep bidirectional stack. Layers above the first
// consume the concatenated forward/backward states of the layer below.
struct LSTMStackSpec {
  std::string prefix;
  std::size_t depth = 1;
  std::size_t input_dim = 1;
  std::size_t hidden_dim = 1;

  std::size_t layer_input_dim(std::size_t layer) const {
    return layer == 0 ? input_dim : 2 * hidden_dim;
  }
  std::size_t output_dim() const { return 2 * hidden_dim; }
  std::string param_name(std::size_t layer, const char* dir, const char* which) const;
};

// Registers all stack parameters in the store. Weight matrices get fan-based
// uniform ranges; biases are zero except the forget gate at 1.0.
void init_lstm_stack(ParamStore& store, const LSTMStackSpec& spec, Rng& rng);

LSTMCellVars bind_lstm_cell(Binder& bind, const LSTMStackSpec& spec,
                            std::size_t layer, const char* dir);

// One LSTM transition: i,f,o = sigmoid(Wx + Uh + b), g = tanh(Wx + Uh + b),
// c = f.c_prev + i.g, h = o.tanh(c).
std::pair<VarId, VarId> lstm_step(Tape& tape, const LSTMCellVars& cell, VarId x,
                                  VarId h_prev, VarId c_prev);

// Runs the full bidirectional stack; returns per-position top-layer states,
// each the concatenation [forward_i; backward_i] of size 2*hidden_dim.
std::vector<VarId> bilstm_encode(Tape& tape, Binder& bind, const LSTMStackSpec& spec,
                                 std::span<const VarId> inputs);

}  // namespace srlp

#endif
