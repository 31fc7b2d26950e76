import init, { jack, coefficient_sweep, pt_curves } from "./pkg/calogero_wasm.js";

const $ = (id) => document.getElementById(id);

function guard(out, f) {
  try {
    out.classList.remove("err");
    f();
  } catch (e) {
    out.classList.add("err");
    out.textContent = String(e.message ?? e);
  }
}

// series: [{ xs, ys, color, label }]; ys may contain nulls (gaps in the line)
function plot(canvas, series, opts = {}) {
  const ctx = canvas.getContext("2d");
  const w = canvas.width, h = canvas.height, pad = 48;
  ctx.clearRect(0, 0, w, h);
  const pts = series.flatMap((s) => s.xs.map((x, i) => [x, s.ys[i]])).filter((p) => p[1] !== null && isFinite(p[1]));
  if (!pts.length) return;
  const tf = opts.logY ? (y) => Math.log10(Math.max(y, 1e-300)) : (y) => y;
  let [x0, x1] = [Math.min(...pts.map((p) => p[0])), Math.max(...pts.map((p) => p[0]))];
  let ys = pts.map((p) => tf(p[1])).concat((opts.hlines ?? []).map((l) => tf(l.y)));
  let [y0, y1] = [Math.min(...ys), Math.max(...ys)];
  if (y0 === y1) { y0 -= 1; y1 += 1; }
  const X = (x) => pad + ((x - x0) / (x1 - x0 || 1)) * (w - 2 * pad);
  const Y = (y) => h - pad - ((tf(y) - y0) / (y1 - y0)) * (h - 2 * pad);

  ctx.strokeStyle = "#999";
  ctx.strokeRect(pad, pad, w - 2 * pad, h - 2 * pad);
  ctx.fillStyle = "#444";
  ctx.font = "12px sans-serif";
  ctx.fillText(x0.toPrecision(3), pad, h - pad + 16);
  ctx.fillText(x1.toPrecision(3), w - pad - 30, h - pad + 16);
  const lab = (v) => (opts.logY ? "1e" + v.toFixed(1) : v.toPrecision(3));
  ctx.fillText(lab(y1), 4, pad + 4);
  ctx.fillText(lab(y0), 4, h - pad);

  for (const l of opts.hlines ?? []) {
    ctx.strokeStyle = l.color;
    ctx.setLineDash([5, 4]);
    ctx.beginPath();
    ctx.moveTo(pad, Y(l.y));
    ctx.lineTo(w - pad, Y(l.y));
    ctx.stroke();
    ctx.setLineDash([]);
  }
  for (const l of opts.vlines ?? []) {
    if (l.x < x0 || l.x > x1) continue;
    ctx.strokeStyle = l.color;
    ctx.setLineDash([2, 3]);
    ctx.beginPath();
    ctx.moveTo(X(l.x), pad);
    ctx.lineTo(X(l.x), h - pad);
    ctx.stroke();
    ctx.setLineDash([]);
  }
  series.forEach((s, k) => {
    ctx.strokeStyle = s.color;
    ctx.lineWidth = 2;
    ctx.beginPath();
    let pen = false;
    s.xs.forEach((x, i) => {
      const y = s.ys[i];
      if (y === null || !isFinite(y)) { pen = false; return; }
      pen ? ctx.lineTo(X(x), Y(y)) : ctx.moveTo(X(x), Y(y));
      pen = true;
    });
    ctx.stroke();
    ctx.fillStyle = s.color;
    ctx.fillText(s.label, w - pad - 160, pad + 16 + 16 * k);
  });
  ctx.lineWidth = 1;
}

function runJack() {
  const out = $("j-out");
  guard(out, () => {
    const r = JSON.parse(jack(+$("j-n").value, $("j-lam").value, $("j-part").value, +$("j-depth").value));
    out.textContent =
      `P = ${r.display}\nE = ${r.eigenvalue}\n` +
      `matches operator oracle: ${r.oracle_agrees}`;
  });
}

function runSweep() {
  const msg = $("s-msg");
  guard(msg, () => {
    const pts = JSON.parse(
      coefficient_sweep(+$("s-n").value, $("s-part").value, $("s-tgt").value, $("s-lo").value, $("s-hi").value, 120),
    );
    plot($("s-plot"), [{ xs: pts.map((p) => p.lambda_f64), ys: pts.map((p) => p.value), color: "#1f5fa8", label: "coefficient" }]);
    const gaps = pts.filter((p) => p.value === null).length;
    msg.textContent = gaps ? `${gaps} degenerate couplings skipped` : "";
  });
}

function runCurves() {
  const msg = $("c-msg");
  guard(msg, () => {
    const c = JSON.parse(pt_curves(+$("c-n").value, $("c-lam").value, $("c-lo").value, $("c-hi").value, 200));
    plot(
      $("c-plot"),
      [
        { xs: c.radius, ys: c.cond1, color: "#c0392b", label: "convergence sum" },
        { xs: c.radius, ys: c.cond3, color: "#27ae60", label: "integrability sum" },
      ],
      { logY: true, hlines: [{ y: c.delta, color: "#555" }], vlines: [{ x: c.r_min, color: "#8e44ad" }] },
    );
    const first = c.radius.find((r, i) => c.cond1[i] < c.delta);
    msg.textContent =
      `dashed: Δ = 2λ = ${c.delta}; dotted: reference radius ${c.r_min}. ` +
      (first ? `Convergence sum drops below Δ near R ≈ ${first.toFixed(2)}.` : "Convergence sum stays above Δ on this range.");
  });
}

await init();
$("j-go").onclick = runJack;
$("s-go").onclick = runSweep;
$("c-go").onclick = runCurves;
runJack();
runSweep();
runCurves();
