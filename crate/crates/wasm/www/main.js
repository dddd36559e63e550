import init, { pullback_series, generic_series, bq_heatmap } from "./pkg/harbourne_wasm.js";

const $ = (id) => document.getElementById(id);
const num = (id) => Number($(id).value);
const fmt = (q) => (q.den === "1" ? q.num : `${q.num}/${q.den}`);

function legend(el, series) {
  el.innerHTML = series.map((s) => `<span><i style="background:${s.color}"></i>${s.label}</span>`).join("");
}

// Line chart of several series sharing an x axis.
function lineChart(canvas, xs, series) {
  const ctx = canvas.getContext("2d");
  const { width: w, height: h } = canvas;
  const pad = { l: 56, r: 12, t: 12, b: 28 };
  ctx.clearRect(0, 0, w, h);
  const ys = series.flatMap((s) => s.values).filter(Number.isFinite);
  if (!xs.length || !ys.length) return;
  let [lo, hi] = [Math.min(...ys), Math.max(...ys)];
  if (hi - lo < 1e-9) [lo, hi] = [lo - 1, hi + 1];
  const [x0, x1] = [xs[0], xs[xs.length - 1] === xs[0] ? xs[0] + 1 : xs[xs.length - 1]];
  const px = (x) => pad.l + ((x - x0) / (x1 - x0)) * (w - pad.l - pad.r);
  const py = (y) => h - pad.b - ((y - lo) / (hi - lo)) * (h - pad.t - pad.b);

  ctx.strokeStyle = "#ccc";
  ctx.fillStyle = "#555";
  ctx.font = "11px sans-serif";
  for (let i = 0; i <= 4; i++) {
    const y = lo + ((hi - lo) * i) / 4;
    ctx.beginPath();
    ctx.moveTo(pad.l, py(y));
    ctx.lineTo(w - pad.r, py(y));
    ctx.stroke();
    ctx.fillText(y.toFixed(3), 4, py(y) + 4);
  }
  const step = Math.max(1, Math.ceil(xs.length / 12));
  xs.forEach((x, i) => i % step === 0 && ctx.fillText(String(x), px(x) - 6, h - 8));

  for (const s of series) {
    ctx.strokeStyle = s.color;
    ctx.lineWidth = 2;
    ctx.beginPath();
    s.values.forEach((y, i) => (i ? ctx.lineTo(px(xs[i]), py(y)) : ctx.moveTo(px(xs[i]), py(y))));
    ctx.stroke();
  }
}

function showError(el, msg) {
  el.innerHTML = `<span class="err">${msg}</span>`;
}

function drawPullback() {
  const out = JSON.parse(pullback_series($("pb-name").value, num("pb-emax")));
  if (out.error) return showError($("pb-readout"), out.error);
  const xs = out.rows.map((r) => r.e);
  const series = [
    { label: "H(X_e, C)", color: "#1f77b4", values: out.rows.map((r) => r.harbourne.approx) },
    { label: "C0-disjoint bound", color: "#d62728", values: out.rows.map((r) => r.prop_c0.approx) },
    { label: "general bound", color: "#2ca02c", values: out.rows.map((r) => r.thm47.approx) },
    { label: "global bound", color: "#999", values: out.rows.map((r) => r.global.approx) },
  ];
  legend($("pb-legend"), series);
  lineChart($("pb-chart"), xs, series);
  const last = out.rows[out.rows.length - 1];
  $("pb-readout").textContent =
    `H(P^2, L) = ${fmt(out.plane_harbourne.exact)}   d = ${out.d}\n` +
    `at e = ${last.e}: H = ${fmt(last.harbourne.exact)}, C0-disjoint bound = ${fmt(last.prop_c0.exact)}, ` +
    `general bound = ${fmt(last.thm47.exact)}`;
}

function drawGeneric() {
  const out = JSON.parse(generic_series(num("gn-g"), num("gn-e"), num("gn-a"), num("gn-b"), num("gn-dmax")));
  if (out.error) {
    $("gn-chart").getContext("2d").clearRect(0, 0, 940, 320);
    return showError($("gn-readout"), out.error);
  }
  const xs = out.rows.map((r) => r.d);
  const series = [
    { label: "H(X, C)", color: "#1f77b4", values: out.rows.map((r) => r.harbourne.approx) },
    { label: "general bound", color: "#2ca02c", values: out.rows.map((r) => r.thm47.approx) },
    { label: "global bound", color: "#999", values: out.rows.map(() => out.global.approx) },
  ];
  legend($("gn-legend"), series);
  lineChart($("gn-chart"), xs, series);
  const last = out.rows[out.rows.length - 1];
  $("gn-readout").textContent =
    `h = ${out.h}   global bound = ${fmt(out.global.exact)}\n` +
    `at d = ${last.d}: H = ${fmt(last.harbourne.exact)}, general bound = ${fmt(last.thm47.exact)}`;
}

const VIOLATION_COLORS = {
  Nonnegativity: "#e377c2",
  Integrality: "#ff7f0e",
  HC2Nonzero: "#1f77b4",
};

let bqCells = [];
let bqGeom = null;

function drawHeatmap() {
  const out = JSON.parse(bq_heatmap(num("bq-g"), num("bq-e"), num("bq-off"), num("bq-amax"), num("bq-dmax")));
  const canvas = $("bq-chart");
  const ctx = canvas.getContext("2d");
  ctx.clearRect(0, 0, canvas.width, canvas.height);
  if (out.error) return showError($("bq-info"), out.error);
  bqCells = out.cells;
  const as = [...new Set(bqCells.map((c) => c.a))];
  const ds = [...new Set(bqCells.map((c) => c.d))];
  const pad = { l: 40, t: 8, b: 24 };
  const cw = (canvas.width - pad.l - 8) / ds.length;
  const ch = (canvas.height - pad.t - pad.b) / as.length;
  bqGeom = { pad, cw, ch, as, ds };
  for (const c of bqCells) {
    const kind = c.feasible ? "feasible" : c.violated.find((v) => VIOLATION_COLORS[v]) ?? "HC2Nonzero";
    ctx.fillStyle = c.feasible ? "#2ca02c" : VIOLATION_COLORS[kind];
    ctx.fillRect(pad.l + ds.indexOf(c.d) * cw, pad.t + as.indexOf(c.a) * ch, cw - 1, ch - 1);
  }
  ctx.fillStyle = "#555";
  ctx.font = "11px sans-serif";
  as.forEach((a, i) => ctx.fillText(`a=${a}`, 2, pad.t + i * ch + ch / 2 + 4));
  const step = Math.max(1, Math.ceil(ds.length / 15));
  ds.forEach((d, i) => i % step === 0 && ctx.fillText(String(d), pad.l + i * cw, canvas.height - 8));
  legend($("bq-legend"), [
    { label: "t2 or t6 negative", color: VIOLATION_COLORS.Nonnegativity },
    { label: "t2 or t6 not integral", color: VIOLATION_COLORS.Integrality },
    { label: "counts fine, H_C(2) != 0", color: VIOLATION_COLORS.HC2Nonzero },
    { label: "feasible", color: "#2ca02c" },
  ]);
  const feasible = bqCells.filter((c) => c.feasible).length;
  $("bq-info").textContent = `${bqCells.length} points, ${feasible} feasible. Hover a cell.`;
}

$("bq-chart").addEventListener("mousemove", (ev) => {
  if (!bqGeom) return;
  const r = ev.target.getBoundingClientRect();
  const { pad, cw, ch, as, ds } = bqGeom;
  const i = Math.floor((ev.clientX - r.left - pad.l) / cw);
  const j = Math.floor((ev.clientY - r.top - pad.t) / ch);
  const c = bqCells.find((c) => c.d === ds[i] && c.a === as[j]);
  if (!c) return;
  $("bq-info").textContent =
    `a = ${c.a}, d = ${c.d}: ${c.feasible ? "feasible" : "infeasible"}\n` +
    `t2 = ${fmt(c.t2)}, t6 = ${fmt(c.t6)}, H_C(2) = ${fmt(c.hc2.exact)}\n` +
    `violated: ${c.violated.join(", ")}`;
});

await init();
for (const [ids, draw] of [
  [["pb-name", "pb-emax"], drawPullback],
  [["gn-g", "gn-e", "gn-a", "gn-b", "gn-dmax"], drawGeneric],
  [["bq-g", "bq-e", "bq-off", "bq-amax", "bq-dmax"], drawHeatmap],
]) {
  ids.forEach((id) => $(id).addEventListener("input", draw));
  draw();
}
