"""Pure numpy implementation of the SGNS update loop."""

import numpy as np

SIGMOID_CLIP = 50.0


def train_pairs(w_in, w_out, centers, contexts, negatives, alphas):
    """Apply one SGD step per (center, context) pair, in order.

    Each step takes the gradient of ``log s(u_o.v_c) + sum log s(-u_n.v_c)`` at
    the current parameters and moves every touched row along it, scaled by the
    pair's learning rate. Negatives equal to the true context are skipped.
    Returns the summed loss over the pairs (before each update).
    """
    loss = 0.0
    k = negatives.shape[1]
    labels = np.zeros(k + 1)
    labels[0] = 1.0
    for p in range(len(centers)):
        c = centers[p]
        o = contexts[p]
        negs = negatives[p]
        keep = negs != o
        idx = np.empty(k + 1, dtype=np.int64)
        idx[0] = o
        idx[1:] = negs
        mask = np.ones(k + 1, dtype=bool)
        mask[1:] = keep
        idx = idx[mask]
        lab = labels[mask]
        v = w_in[c].copy()
        u = w_out[idx]
        x = np.clip(u @ v, -SIGMOID_CLIP, SIGMOID_CLIP)
        f = 1.0 / (1.0 + np.exp(-x))
        loss -= np.log(f[0]) + np.log1p(-f[1:]).sum()
        g = (lab - f) * alphas[p]
        if len(np.unique(idx)) == len(idx):
            w_out[idx] += np.outer(g, v)
        else:
            np.add.at(w_out, idx, np.outer(g, v))
        w_in[c] += g @ u
    return float(loss)
