import init, {
  spectrumCurves, spectrumScatter, ratioHistogram, runCheck, checkNames,
} from "./pkg/chv_wasm.js";

const COLORS = ["#1f77b4", "#ff7f0e", "#2ca02c", "#d62728", "#9467bd"];
const $ = (id) => document.getElementById(id);

function frame(ctx, w, h, xr, yr) {
  const pad = 40;
  const sx = (x) => pad + ((x - xr[0]) / (xr[1] - xr[0])) * (w - 2 * pad);
  const sy = (y) => h - pad - ((y - yr[0]) / (yr[1] - yr[0])) * (h - 2 * pad);
  ctx.clearRect(0, 0, w, h);
  ctx.strokeStyle = "#999";
  ctx.strokeRect(pad, pad, w - 2 * pad, h - 2 * pad);
  ctx.fillStyle = "#444";
  ctx.font = "11px sans-serif";
  ctx.fillText(xr[0].toFixed(2), pad, h - pad + 14);
  ctx.fillText(xr[1].toFixed(2), w - pad - 24, h - pad + 14);
  ctx.fillText(yr[1].toFixed(1), 2, pad + 4);
  ctx.fillText(yr[0].toFixed(1), 2, h - pad);
  return { sx, sy };
}

function drawSpectrum() {
  const canvas = $("sp-canvas");
  const ctx = canvas.getContext("2d");
  const curves = spectrumCurves(800);
  const general = $("sp-general").checked;
  const n = Number($("sp-samples").value);
  const pts = spectrumScatter(n, 7n);
  const { sx, sy } = frame(ctx, canvas.width, canvas.height, [-1, 1], [-10, 10]);

  for (let i = 0; i < 5; i++) {
    ctx.strokeStyle = COLORS[i];
    ctx.lineWidth = 2;
    ctx.beginPath();
    for (let r = 0; r < curves.length; r += 11) {
      const x = sx(curves[r]), y = sy(curves[r + 1 + i]);
      r === 0 ? ctx.moveTo(x, y) : ctx.lineTo(x, y);
    }
    ctx.stroke();
    if (general) {
      ctx.setLineDash([4, 4]);
      ctx.lineWidth = 1;
      ctx.beginPath();
      for (let r = 0; r < curves.length; r += 11) {
        const x = sx(curves[r]), y = sy(curves[r + 6 + i]);
        r === 0 ? ctx.moveTo(x, y) : ctx.lineTo(x, y);
      }
      ctx.stroke();
      ctx.setLineDash([]);
    }
  }
  ctx.fillStyle = "#000";
  for (let r = 0; r < pts.length; r += 6) {
    for (let i = 0; i < 5; i++) {
      ctx.fillRect(sx(pts[r]) - 1, sy(pts[r + 1 + i]) - 1, 2, 2);
    }
  }
  $("sp-info").textContent =
    `Lines: ordered closed-form eigenvalues of D^2w on the unit sphere. ` +
    `Dots: ${n} random unit points, eigenvalues by forward-mode AD and Jacobi.` +
    (general ? " Dashed: printed general-delta branches at delta = 1/2." : "");
}

function drawHistogram() {
  const canvas = $("h-canvas");
  const ctx = canvas.getContext("2d");
  const t0 = performance.now();
  let h;
  try {
    h = JSON.parse(ratioHistogram($("h-stat").value, Number($("h-samples").value),
      BigInt($("h-seed").value), 40));
  } catch (e) {
    $("h-info").textContent = e.message;
    return;
  }
  const ms = performance.now() - t0;
  const top = Math.max(1, ...h.counts);
  const lo = h.log10_min, hi = Math.max(h.log10_max, lo + 1e-9);
  const { sx, sy } = frame(ctx, canvas.width, canvas.height, [lo, hi], [0, top]);
  const bw = (hi - lo) / h.counts.length;
  ctx.fillStyle = "#1f77b4";
  h.counts.forEach((c, k) => {
    const x0 = sx(lo + k * bw), x1 = sx(lo + (k + 1) * bw);
    ctx.fillRect(x0, sy(c), Math.max(1, x1 - x0 - 1), sy(0) - sy(c));
  });
  $("h-info").textContent =
    `${h.statistic}: log10 range [${lo.toFixed(3)}, ${h.log10_max.toFixed(3)}], ` +
    `max ${Math.pow(10, h.log10_max).toPrecision(6)}, ${h.skipped} skipped, ${ms.toFixed(0)} ms`;
}

function runSelected() {
  const out = $("c-out");
  try {
    const r = JSON.parse(runCheck($("c-name").value, Number($("c-samples").value),
      BigInt($("c-seed").value)));
    out.innerHTML = "";
    const verdict = document.createElement("span");
    verdict.className = r.pass ? "pass" : "fail";
    verdict.textContent = r.pass ? "PASS" : "FAIL";
    out.append(verdict, `  ${r.name}\nworst ${r.worst}\nbound ${r.bound} (tolerance ${r.tolerance})\n` +
      `samples ${r.samples}\n${r.notes}`);
  } catch (e) {
    out.textContent = e.message;
  }
}

await init();
for (const name of checkNames()) {
  const opt = document.createElement("option");
  opt.textContent = name;
  $("c-name").append(opt);
}
$("sp-run").onclick = drawSpectrum;
$("sp-general").onchange = drawSpectrum;
$("h-run").onclick = drawHistogram;
$("c-run").onclick = runSelected;
drawSpectrum();
drawHistogram();
