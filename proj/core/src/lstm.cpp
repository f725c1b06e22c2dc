#include "srlp/lstm.hpp"

#include "srlp/error.hpp"

namespace srlp {

std::string LSTMStackSpec::param_name(std::size_t layer, const char* dir,
                                      const char* which) const {
  return prefix + ".L" + std::to_string(layer) + "." + dir + "." + which;
}

namespace {

constexpr const char* kGates[4] = {"i", "f", "o", "g"};
constexpr const char* kDirs[2] = {"fwd", "bwd"};

}  // namespace

void init_lstm_stack(ParamStore& store, const LSTMStackSpec& spec, Rng& rng) {
  for (std::size_t layer = 0; layer < spec.depth; ++layer) {
    std::size_t in = spec.layer_input_dim(layer);
    std::size_t h = spec.hidden_dim;
    for (const char* dir : kDirs) {
      for (const char* gate : kGates) {
        store.create(spec.param_name(layer, dir, (std::string("W_") + gate).c_str()),
                     glorot_uniform(h, in, rng));
        store.create(spec.param_name(layer, dir, (std::string("U_") + gate).c_str()),
                     glorot_uniform(h, h, rng));
        Tensor b = Tensor::zeros({h});
        if (gate[0] == 'f') b.fill(1.0);  // forget-gate bias
        store.create(spec.param_name(layer, dir, (std::string("b_") + gate).c_str()),
                     std::move(b));
      }
    }
  }
}

LSTMCellVars bind_lstm_cell(Binder& bind, const LSTMStackSpec& spec, std::size_t layer,
                            const char* dir) {
  auto p = [&](const char* which) { return bind(spec.param_name(layer, dir, which)); };
  LSTMCellVars cell;
  cell.W_i = p("W_i");
  cell.W_f = p("W_f");
  cell.W_o = p("W_o");
  cell.W_g = p("W_g");
  cell.U_i = p("U_i");
  cell.U_f = p("U_f");
  cell.U_o = p("U_o");
  cell.U_g = p("U_g");
  cell.b_i = p("b_i");
  cell.b_f = p("b_f");
  cell.b_o = p("b_o");
  cell.b_g = p("b_g");
  return cell;
}

std::pair<VarId, VarId> lstm_step(Tape& tape, const LSTMCellVars& cell, VarId x,
                                  VarId h_prev, VarId c_prev) {
  auto gate = [&](VarId W, VarId U, VarId b) {
    return tape.add(tape.add(tape.matvec(W, x), tape.matvec(U, h_prev)), b);
  };
  VarId i = tape.sigmoid(gate(cell.W_i, cell.U_i, cell.b_i));
  VarId f = tape.sigmoid(gate(cell.W_f, cell.U_f, cell.b_f));
  VarId o = tape.sigmoid(gate(cell.W_o, cell.U_o, cell.b_o));
  VarId g = tape.tanh(gate(cell.W_g, cell.U_g, cell.b_g));
  VarId c = tape.add(tape.mul(f, c_prev), tape.mul(i, g));
  VarId h = tape.mul(o, tape.tanh(c));
  return {h, c};
}

std::vector<VarId> bilstm_encode(Tape& tape, Binder& bind, const LSTMStackSpec& spec,
                                 std::span<const VarId> inputs) {
  if (inputs.empty()) fail("bilstm_encode: empty sequence");
  std::size_t n = inputs.size();
  std::vector<VarId> layer_in(inputs.begin(), inputs.end());

  for (std::size_t layer = 0; layer < spec.depth; ++layer) {
    LSTMCellVars fwd = bind_lstm_cell(bind, spec, layer, "fwd");
    LSTMCellVars bwd = bind_lstm_cell(bind, spec, layer, "bwd");

    std::vector<VarId> fwd_h(n), bwd_h(n);
    VarId h = tape.zeros({spec.hidden_dim});
    VarId c = tape.zeros({spec.hidden_dim});
    for (std::size_t i = 0; i < n; ++i) {
      auto [h2, c2] = lstm_step(tape, fwd, layer_in[i], h, c);
      h = h2;
      c = c2;
      fwd_h[i] = h2;
    }
    h = tape.zeros({spec.hidden_dim});
    c = tape.zeros({spec.hidden_dim});
    for (std::size_t i = n; i-- > 0;) {
      auto [h2, c2] = lstm_step(tape, bwd, layer_in[i], h, c);
      h = h2;
      c = c2;
      bwd_h[i] = h2;
    }
    std::vector<VarId> out(n);
    for (std::size_t i = 0; i < n; ++i) out[i] = tape.concat2(fwd_h[i], bwd_h[i]);
    layer_in = std::move(out);
  }
  return layer_in;
}

}  // namespace srlp
